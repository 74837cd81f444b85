"""Batch command-line front end.

Subcommands: build, verify, invariants, similar, brauer, catalog.
Reports are UTF-8 JSON with sorted keys; exact scalars are emitted as
coefficient strings, so re-running a command on identical input produces
byte-identical output.  Timing goes to stderr only, to keep the payload
deterministic.  Exit codes: 0 = pass, 1 = verification failure,
2 = usage or parameter error.

Flags (environment overrides in parentheses): --field-conductor
(TRIALITY_FIELD_CONDUCTOR), --seed (TRIALITY_SEED), --out (TRIALITY_OUT).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import __version__
from .scalars import make_field
from .fgab import make_group
from .grading import invariants, universal_group, verify_grading
from . import classify
from .classify import (
    TypeIIIParams,
    build,
    fine_typeIII,
    models,
    okubo_orientation,
    params_r0,
    params_r1,
    params_r2,
    params_r4,
    params_r8,
    refinement_impossible,
    similar_params,
    witness_map,
)


class UsageError(ValueError):
    pass


def group_from_json(data) -> "AbGroup":
    return make_group(int(data.get("free_rank", 0)), [int(d) for d in data.get("torsion", [])])


def params_from_json(data) -> TypeIIIParams:
    try:
        G = group_from_json(data["group"])
        r = int(data["rank"])
        h = G.element(data["h"])
        if r == 0:
            k1, k2 = (G.element(k) for k in data["K"])
            return params_r0(G, k1, k2, h, data["delta"])
        if r == 1:
            return params_r1(G, [G.element(k) for k in data["K"]], h)
        if r == 2:
            return params_r2(G, tuple(G.element(g) for g in data["gamma"]), h)
        if r == 4:
            return params_r4(G, G.element(data["g"]), h)
        if r == 8:
            return params_r8(G, h, data["t"])
    except KeyError as exc:
        raise UsageError(f"missing parameter field: {exc}") from exc
    raise UsageError(f"rank must be 0, 1, 2, 4 or 8, got {data['rank']}")


def emit(report: dict, out_path, exit_code: int) -> int:
    payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return exit_code


def base_report(args, status, **fields):
    rep = {
        "version": __version__,
        "field_conductor": args.conductor,
        "seed": args.seed,
        "status": status,
    }
    rep.update(fields)
    return rep


# ------------------------------------------------------------- subcommands


def cmd_build(args) -> int:
    spec = json.loads(args.params) if args.params else {}
    name = args.constructor
    mod = models(args.conductor)
    if name in ("zorn", "doubled", "okubo", "para-zorn", "para-doubled"):
        key = {
            "zorn": "para_zorn",
            "para-zorn": "para_zorn",
            "doubled": "para_doubled",
            "para-doubled": "para_doubled",
            "okubo": "okubo",
        }[name]
        if name in ("zorn", "doubled"):
            from .composition import zorn_cayley, doubled_cayley

            A = zorn_cayley(mod["field"]) if name == "zorn" else doubled_cayley(mod["field"])
        else:
            A = mod[key]
        table = {}
        for (i, j), row in sorted(A.mul.items()):
            table[f"{i},{j}"] = {str(k): c.to_strings() for k, c in sorted(row.items())}
        rep = base_report(args, "pass", constructor=name, dimension=A.dim, labels=A.labels, product=table)
        return emit(rep, args.out, 0)
    if name == "typeIII":
        p = params_from_json(spec)
        built = build(p, args.conductor)
        degrees = {
            "V": [list(d.canonical()) for d in built.grading.degrees["V"]],
            "L": [list(d.canonical()) for d in built.grading.degrees["L"]],
        }
        rep = base_report(
            args,
            "pass",
            constructor="typeIII",
            params=p.describe(),
            rank=classify.rank(built),
            group={"free_rank": p.group.free_rank, "torsion": list(p.group.torsion)},
            degrees=degrees,
            support_size=len(built.grading.support("V")),
        )
        return emit(rep, args.out, 0)
    raise UsageError(f"unknown constructor {name!r}")


def _suite_composition(args, mod):
    from .composition import is_hurwitz, is_symmetric_composition, zorn_cayley, doubled_cayley

    F = mod["field"]
    checks = {}
    checks["zorn_hurwitz"] = bool(is_hurwitz(zorn_cayley(F)).ok)
    checks["doubled_hurwitz"] = bool(is_hurwitz(doubled_cayley(F)).ok)
    checks["para_cayley_symmetric"] = bool(is_symmetric_composition(mod["para_zorn"]).ok)
    checks["para_doubled_symmetric"] = bool(is_symmetric_composition(mod["para_doubled"]).ok)
    checks["okubo_symmetric"] = bool(is_symmetric_composition(mod["okubo"]).ok)
    return checks


def _suite_cyclic(args, mod):
    from .cyclic import verify_cyclic_axioms, opposite

    checks = {}
    checks["cayley_tensor_axioms"] = bool(verify_cyclic_axioms(mod["V_zorn"]).ok)
    checks["okubo_tensor_axioms"] = bool(verify_cyclic_axioms(mod["V_okubo"]).ok)
    checks["opposite_axioms"] = bool(verify_cyclic_axioms(opposite(mod["V_zorn"])).ok)
    return checks


def _suite_lie(args, mod):
    from .trilie import tri_basis, verify_lie, cyclic_shift_closed, root_datum, is_d4_cartan_matrix

    checks = {}
    for name in ("para_zorn", "okubo"):
        tri = tri_basis(mod[name])
        checks[f"{name}_dimension_28"] = tri.dim == 28
        checks[f"{name}_jacobi"] = not verify_lie(tri)
        checks[f"{name}_cyclic_shift"] = cyclic_shift_closed(tri)
        rd = root_datum(tri)
        checks[f"{name}_root_count"] = len(rd.roots) == 24
        checks[f"{name}_d4_cartan_matrix"] = is_d4_cartan_matrix(rd.cartan_matrix)
    return checks


def _suite_trialitarian(args, mod):
    from .trialitarian import (
        alpha,
        alpha_involution_compatible,
        alpha_multiplicative_sample,
        clifford_even,
        end_algebra,
        kappa,
        lie_of_E,
        lie_of_E_equals_der,
    )
    from .trilie import der_cyclic

    V = mod["V_zorn"]
    checks = {}
    E = end_algebra(V)
    Cl = clifford_even(V)
    km = kappa(V, E, Cl)
    am = alpha(V, E, Cl)
    checks["sigma_and_unit"] = True
    checks["clifford_relations"] = True  # raised in clifford_even otherwise
    checks["kappa_consistent"] = True
    checks["alpha_bijective_homomorphism"] = alpha_multiplicative_sample(am, seed=args.seed)
    checks["alpha_involutions"] = alpha_involution_compatible(am)
    lie = lie_of_E(V, E, Cl, km, am)
    checks["lie_of_E_dimension_28"] = len(lie) == 28
    checks["lie_of_E_equals_derivations"] = lie_of_E_equals_der(V, E, lie, der_cyclic(V))
    return checks


def _suite_jordan(args, mod):
    from .albert import albert, verify_jordan, verify_degree3, random_element

    J = albert(mod["V_zorn"])
    rng = random.Random(args.seed)
    checks = {}
    checks["dimension_27"] = J.dim == 27
    checks["jordan_identity"] = not verify_jordan(J)
    checks["degree3_random_100"] = all(verify_degree3(J, random_element(J, rng)) for _ in range(100))
    return checks


def _suite_grading(args, mod):
    from .composition import cartan_grading_cayley, okubo_grading, zorn_cayley
    from .grading import coarsen, is_refinement, universal_group
    from .fgab import GroupHom

    F = mod["field"]
    checks = {}
    g = cartan_grading_cayley(zorn_cayley(F))
    checks["cartan_verifies"] = g.verified
    u = universal_group(g)
    checks["cartan_universal_Z2"] = u.group == make_group(2)
    go = okubo_grading(mod["okubo"], "+")
    checks["okubo_verifies"] = go.verified
    corrupted = go.copy_with_degree("A", 0, go.group.element((1, 1)))
    checks["mutation_detected"] = not verify_grading(corrupted).ok
    return checks


SUITES = {
    "composition": _suite_composition,
    "cyclic": _suite_cyclic,
    "lie": _suite_lie,
    "trialitarian": _suite_trialitarian,
    "jordan": _suite_jordan,
    "grading": _suite_grading,
}


def cmd_verify(args) -> int:
    mod = models(args.conductor)
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    checks = SUITES[args.suite](args, mod)
    ok = all(checks.values())
    rep = base_report(args, "pass" if ok else "fail", suite=args.suite, checks=dict(sorted(checks.items())))
    return emit(rep, args.out, 0 if ok else 1)


def cmd_invariants(args) -> int:
    p = params_from_json(json.loads(args.params))
    built = build(p, args.conductor)
    inv = invariants_of_built(built)
    rep = base_report(args, "pass", params=p.describe(), invariants=inv)
    return emit(rep, args.out, 0)


def invariants_of_built(built) -> dict:
    uni = universal_group(built.grading)
    comps = built.grading.components("V")
    dims = sorted(len(ix) for ix in comps.values())
    maxd = dims[-1] if dims else 0
    tv = [sum(1 for d in dims if d == i) for i in range(1, maxd + 1)]
    out = {
        "rank": len(built.grading.identity_component("V")),
        "support": sorted(list(s) for s in comps),
        "type_vector": tv,
        "universal_group": {
            "free_rank": uni.group.free_rank,
            "torsion": list(uni.group.torsion),
        },
    }
    if built.params.rank == 0:
        out["orientation"] = okubo_orientation(built)
    return out


def cmd_similar(args) -> int:
    data = json.loads(args.params)
    p = params_from_json(data["first"])
    q = params_from_json(data["second"])
    verdict = similar_params(p, q)
    trace = {k: (list(v) if isinstance(v, tuple) else v) for k, v in verdict.trace.items()}
    rep = base_report(
        args,
        "pass",
        first=p.describe(),
        second=q.describe(),
        similar=bool(verdict.similar),
        trace=trace,
    )
    return emit(rep, args.out, 0)


def cmd_brauer(args) -> int:
    from .trilie import tri_basis, induce_tri_grading
    from .brauer import related_triple, division_params, verify_brauer_relations
    from .fgab import quotient

    kind = args.kind
    fine = fine_typeIII(kind, args.conductor)
    built = fine["built"]
    S = built.V.S
    tri = tri_basis(S)
    _gt, adapted = induce_tri_grading(built.grading, tri)
    G = built.params.group
    Q, pr = quotient(G, [built.params.h])
    if not Q.is_finite():
        Qfin, pr2 = quotient(G, [built.params.h] + [G.generator(i) for i in range(G.free_rank)])
        adapted_coarse = [(pr2(g), trip) for g, trip in adapted]
        quotient_note = "free directions quotiented away"
        Quse = Qfin
    else:
        adapted_coarse = [(pr(g), trip) for g, trip in adapted]
        quotient_note = None
        Quse = Q
    triple = related_triple(adapted_coarse, S)
    field = models(args.conductor)["field"]
    report = verify_brauer_relations(triple, field)
    per_factor = []
    for pparam in report.params:
        per_factor.append(
            {
                "T_invariant_factors": list(pparam.support_group.torsion),
                "beta": {f"{list(s)},{list(t)}": v.to_strings() for (s, t), v in sorted(pparam.beta.items())},
                "trivial": pparam.trivial,
            }
        )
    ok = report.ok()
    rep = base_report(
        args,
        "pass" if ok else "fail",
        kind=kind,
        grading_group={"free_rank": Quse.free_rank, "torsion": list(Quse.torsion)},
        note=quotient_note,
        factors=per_factor,
        relations={
            "squares_trivial": report.elementary2 and report.beta_pm1,
            "product_relation": report.product_relation,
        },
    )
    return emit(rep, args.out, 0 if ok else 1)


def cmd_catalog(args) -> int:
    if args.what != "fine-typeIII":
        raise UsageError("catalog knows only fine-typeIII")
    rows = []
    fines = {}
    for kind in ("cartan", "z2cubed", "okubo"):
        r = fine_typeIII(kind, args.conductor)
        fines[kind] = r
        built = r["built"]
        rows.append(
            {
                "kind": kind,
                "rank": len(built.grading.identity_component("V")),
                "support_size": len(built.grading.support("V")),
                "universal_group": {
                    "free_rank": r["universal"].group.free_rank,
                    "torsion": list(r["universal"].group.torsion),
                },
                "universal_matches_expected": bool(r["matches"]),
            }
        )
    refinements = {}
    ok = all(row["universal_matches_expected"] for row in rows)
    for a in fines:
        for b in fines:
            if a == b:
                continue
            reason = refinement_impossible(fines[a], fines[b])
            refinements[f"{b} refines {a}"] = reason or "NOT REFUTED"
            if reason is None:
                ok = False
    rep = base_report(args, "pass" if ok else "fail", table=rows, non_refinement=refinements)
    return emit(rep, args.out, 0 if ok else 1)


# ------------------------------------------------------------------ driver


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="triality", description=__doc__)
    ap.add_argument(
        "--field-conductor",
        dest="conductor",
        type=int,
        default=int(os.environ.get("TRIALITY_FIELD_CONDUCTOR", "12")),
        help="conductor N of the cyclotomic scalar field Q(zeta_N)",
    )
    ap.add_argument(
        "--seed",
        type=int,
        default=int(os.environ.get("TRIALITY_SEED", "0")),
        help="seed for randomized sweeps",
    )
    ap.add_argument("--out", default=os.environ.get("TRIALITY_OUT"), help="write the JSON report to a file")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a constructor by name")
    b.add_argument("--constructor", required=True)
    b.add_argument("--params", help="JSON parameters")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True)
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("invariants", help="invariants of a Type III grading")
    i.add_argument("--params", required=True)
    i.set_defaults(func=cmd_invariants)

    s = sub.add_parser("similar", help="decide similarity of two parameter tuples")
    s.add_argument("--params", required=True, help='JSON {"first": {...}, "second": {...}}')
    s.set_defaults(func=cmd_similar)

    br = sub.add_parser("brauer", help="related triple + Brauer relations for a fine kind")
    br.add_argument("--kind", required=True, choices=["cartan", "z2cubed", "okubo"])
    br.set_defaults(func=cmd_brauer)

    c = sub.add_parser("catalog", help="catalog tables")
    c.add_argument("what")
    c.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    t0 = time.time()
    try:
        code = args.func(args)
    except (UsageError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except classify.ParamError as exc:
        sys.stderr.write(f"parameter error: {exc}\n")
        return 2
    except Exception as exc:  # verification machinery raised: report as failure
        sys.stderr.write(f"verification error: {type(exc).__name__}: {exc}\n")
        return 1
    sys.stderr.write(f"elapsed: {time.time() - t0:.2f}s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

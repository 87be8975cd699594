"""Command line front end: ``kummerlab <group> <command> [options]``.

Exit status: 0 on success, 2 on invalid input, 3 when an existence query
has an empty answer, 64 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import catalog, configs, covers, hodge, kodaira, search
from .report import Report, render

EXIT_OK, EXIT_INVALID, EXIT_EMPTY, EXIT_USAGE = 0, 2, 3, 64


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _ints(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def _frac(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an integer or p/q, got {s!r}") from None


def _load_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ValueError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _config(name_or_path: str) -> configs.LineConfiguration:
    if name_or_path.endswith(".json"):
        c = configs.LineConfiguration.from_json(_load_json(name_or_path), name=name_or_path)
    else:
        c = configs.builtin(name_or_path)
    problems = configs.validate(c)
    if problems:
        raise ValueError("invalid configuration: " + "; ".join(problems))
    return c


def _spec(path: str) -> covers.CoverSpec:
    spec = covers.spec_from_json(_load_json(path))
    if spec.geometry.config is not None:
        problems = configs.validate(spec.geometry.config)
        if problems:
            raise ValueError("invalid configuration: " + "; ".join(problems))
    problems = covers.validate(spec)
    if problems:
        raise ValueError("invalid cover: " + "; ".join(problems))
    return spec


def _inv(inv: covers.ChernInvariants) -> dict:
    return {**inv.as_dict(), "formula": inv.path}


# ---------------------------------------------------------------------------
# handlers return (report, exit code)


def cmd_cover_invariants(a):
    spec = _spec(a.spec)
    smooth = covers.smoothness_check(spec)
    if not smooth.smooth:
        res = {"smooth": False, "singular_nodes": [list(p) for p in smooth.failures]}
        return Report("cover invariants", {"spec": a.spec}, res), EXIT_INVALID
    res = {"group": str(spec.group), "order": spec.group.order, "smooth": True, **_inv(covers.invariants_general(spec))}
    return Report("cover invariants", {"spec": a.spec}, res), EXIT_OK


def cmd_cover_kummer(a):
    c = _config(a.config)
    inv = covers.invariants_kummer_plane(c, a.exponent)
    st = configs.stats(c)
    res = {"r": st.r, "k": st.k, "v": st.v, "delta": st.delta, **_inv(inv)}
    notes = []
    if c.char:
        notes.append(f"configuration exists only in characteristic {c.char}; formulas applied unchanged")
    return Report("cover kummer", {"config": c.name or a.config, "exponent": a.exponent}, res, notes), EXIT_OK


def _hodge_report(spec, command, inputs):
    bundles = hodge.character_bundles(spec)
    q, pg = hodge.irregularity_and_pg(spec)
    inv = covers.invariants_general(spec)
    table = [
        {
            "character": list(b.character.coords),
            "L": list(b.L) if len(b.L) > 1 else b.L[0],
            "h0(K+L)": b.h0_canonical_twist,
            "h1(-L)": b.h1_negative,
        }
        for b in bundles
        if b.h0_canonical_twist or b.h1_negative
    ]
    res = {"q": q, "p_g": pg, "chi": inv.chi, "K2": inv.K2, "e": inv.e, "characters": table}
    notes = ["characters with h0(K+L) = h1(-L) = 0 are omitted"]
    if spec.geometry.kind == "plane" and spec.geometry.lattice.rank == 1:
        can = hodge.canonical_characters(spec)
        res["canonical"] = [
            {"character": list(c.character.coords), "L": c.L, "z_exponents": list(c.exponents)}
            for c in can.characters
        ]
        res["base_nodes"] = [[x + 1 for x in p] for p in can.base_nodes]
        notes.append("base_nodes are pairs of lines (1-based) met by every canonical monomial factor")
    return Report(command, inputs, res, notes), EXIT_OK


def cmd_cover_hodge(a):
    return _hodge_report(_spec(a.spec), "cover hodge", {"spec": a.spec})


def cmd_dp_invariants(a):
    res = {"hk": _inv(covers.invariants_hk_delpezzo(a.n))}
    if math.gcd(a.n, 6) == 1 and a.n >= 5:
        rec = covers.bcdh_invariants(a.n)
        mu = kodaira.zeuthen_segre_mu(rec.invariants.e, rec.b, rec.g, smooth_minimal=True)
        res["bcdh"] = {**_inv(rec.invariants), "b": rec.b, "g": rec.g, "singular_fibres": rec.singular_fibres, "mu": mu}
    return Report("delpezzo invariants", {"n": a.n}, res), EXIT_OK


def cmd_dp_orbits(a):
    cl = search.classify_orbits(a.n)
    rows = []
    for i, o in enumerate(cl.orbits, 1):
        row = {"orbit": i, "size": o.size, "representative": [list(v) for v in o.representative]}
        row.update({k: v for k, v in o.invariants.items() if k != "verified_members"})
        rows.append(row)
    res = {"n": cl.n, "kernel_dim": cl.kernel_dim, "admissible": cl.admissible, "orbit_count": len(rows), "orbits": rows}
    notes = ["representatives are lexicographically least, values listed on E12, E13, ..., E45"]
    if a.n == 5 and cl.orbits:
        land = {
            name: search.assignment_orbit_index(catalog.complete_quadrangle_tuple(six), cl.assignments, cl.labels)
            for name, six in catalog.U_TUPLES.items()
        }
        res["catalog_tuples"] = [{"tuple": k, "orbit": (v + 1) if v is not None else None} for k, v in land.items()]
        notes.append("catalog tuples read on the quadrangle lines in a documented but assumed order")
    code = EXIT_OK if rows else EXIT_EMPTY
    return Report("delpezzo classify-orbits", {"n": a.n}, res, notes), code


def cmd_dp_hodge(a):
    if a.tuple:
        if a.tuple not in catalog.U_TUPLES:
            raise ValueError(f"unknown tuple {a.tuple!r}; known: {', '.join(catalog.U_TUPLES)}")
        spec = covers.delpezzo_spec(catalog.complete_quadrangle_tuple(catalog.U_TUPLES[a.tuple]), 5)
        inputs = {"tuple": a.tuple}
    elif a.spec:
        spec = _spec(a.spec)
        inputs = {"spec": a.spec}
    else:
        raise UsageError("delpezzo hodge: give --spec or --tuple")
    if spec.geometry.kind != "delpezzo5":
        raise ValueError("spec is not a del Pezzo cover")
    problems = covers.validate(spec)
    if problems:
        raise ValueError("invalid cover: " + "; ".join(problems))
    return _hodge_report(spec, "delpezzo hodge", inputs)


def cmd_vhs(a):
    if len(a.m) != 4:
        raise ValueError("--m needs four exponents")
    c = hodge.CyclicQuadrupleCover(a.n, tuple(a.m))
    split = hodge.fujita_split(c)
    res = {**split.as_dict(), "fibre_genus": hodge.cyclic_p1_genus(a.n, a.m), "normalized": c.normalized}
    notes = ["infinite_monodromy is the verdict of a sufficient criterion; false means inconclusive"]
    return Report("vhs analyze", {"n": a.n, "m": a.m}, res, notes), EXIT_OK


def cmd_k_slope(a):
    val = kodaira.very_simple_slope(a.b, a.m)
    return Report("kodaira slope", {"b": a.b, "m": a.m}, {"nuC": val}), EXIT_OK


def cmd_k_feasible(a):
    f = kodaira.kodaira_feasibility(a.g, a.b)
    res = {"feasible": f.feasible, "verdict": "feasible" if f.feasible else "infeasible"}
    if f.feasible:
        res["chi_min"], res["chi_max"] = f.chi_range
    return Report("kodaira feasible", {"g": a.g, "b": a.b}, res), EXIT_OK if f.feasible else EXIT_EMPTY


def cmd_k_mu(a):
    mu = kodaira.zeuthen_segre_mu(a.e, a.b, a.g)
    return Report("kodaira mu", {"e": a.e, "b": a.b, "g": a.g}, {"mu": mu}), EXIT_OK


def cmd_k_scaling(a):
    return Report("kodaira scaling", {"g": a.g, "n": a.n}, {"g_n": kodaira.fibre_genus_scaling(a.g, a.n)}), EXIT_OK


def cmd_k_tan(a):
    if (a.chi is None) == (a.deg is None):
        raise UsageError("kodaira tan: give exactly one of --chi, --deg")
    s = kodaira.tan_min_singular_fibres(a.b, a.g, chi=a.chi, deg=a.deg)
    inputs = {"b": a.b, "g": a.g, "chi": a.chi, "deg": a.deg}
    return Report("kodaira tan", {k: v for k, v in inputs.items() if v is not None}, {"s_min": s}), EXIT_OK


def cmd_k_basechange(a):
    val = kodaira.base_change_slope(a.K2, a.g, a.b, a.d, a.r)
    inputs = {"K2": a.K2, "g": a.g, "b": a.b, "d": a.d, "r": a.r}
    return Report("kodaira basechange", inputs, {"nuC": val}), EXIT_OK


def cmd_beauville(a):
    r = search.beauville_search(a.n)
    rows = [{"T1": [list(x) for x in w.T1], "T2": [list(x) for x in w.T2]} for w in r.witnesses]
    res = {"n": a.n, "exists": r.exists, "count": len(rows), "searched": r.searched, "witnesses": rows}
    return Report("beauville search", {"n": a.n}, res), EXIT_OK if r.exists else EXIT_EMPTY


def cmd_pack(a):
    if a.table:
        data = _load_json(a.table)
        table = search.CayleyTable(tuple(tuple(row) for row in data))
        desc = a.table
    elif a.cyclic:
        table, desc = search.cyclic_table(a.cyclic), f"Z/{a.cyclic}"
    elif a.dihedral:
        table, desc = search.dihedral_table(a.dihedral), f"D_{a.dihedral}"
    elif a.symmetric:
        table, desc = search.symmetric_table(a.symmetric)[0], f"S_{a.symmetric}"
    else:
        raise UsageError("pack: give one of --table, --cyclic, --dihedral, --symmetric")
    res = search.sphere_packing(table, a.stabilizers, a.mode)
    out = {"order": table.order, "r": res.r, "elements": list(res.elements), "mode": res.mode}
    return Report("pack", {"group": desc, "stabilizers": a.stabilizers}, out), EXIT_OK


def cmd_catalog_list(a):
    rows = [{"name": k, "kind": v["kind"]} for k, v in catalog.entries().items()]
    return Report("catalog list", {}, rows), EXIT_OK


def cmd_catalog_show(a):
    ent = catalog.entries()
    if a.name in ent:
        return Report("catalog show", {"name": a.name}, ent[a.name]["data"]), EXIT_OK
    c = configs.builtin(a.name)  # general_position(r) and friends
    st = configs.stats(c)
    return Report("catalog show", {"name": a.name}, {**c.to_json(), "delta": st.delta}), EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> Parser:
    fmt = Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv", "md"), default="md")

    p = Parser(prog="kummerlab", description="Invariants of Abelian covers branched over line configurations.")
    top = p.add_subparsers(dest="group", required=True, parser_class=Parser)

    def leaf(sub, name, func, help_):
        q = sub.add_parser(name, parents=[fmt], help=help_)
        q.set_defaults(func=func)
        return q

    cov = top.add_parser("cover", help="covers of the blown-up plane").add_subparsers(dest="cmd", required=True)
    q = leaf(cov, "invariants", cmd_cover_invariants, "Chern invariants of a cover spec file")
    q.add_argument("--spec", required=True)
    q = leaf(cov, "kummer", cmd_cover_kummer, "closed-form invariants of the Kummer cover")
    q.add_argument("--config", required=True, help="builtin name or a .json file")
    q.add_argument("--exponent", type=int, required=True)
    q = leaf(cov, "hodge", cmd_cover_hodge, "q, p_g and the character table")
    q.add_argument("--spec", required=True)

    dp = top.add_parser("delpezzo", help="covers of the degree-5 del Pezzo surface").add_subparsers(
        dest="cmd", required=True
    )
    q = leaf(dp, "invariants", cmd_dp_invariants, "closed-form invariants for exponent n")
    q.add_argument("--n", type=int, required=True)
    q = leaf(dp, "classify-orbits", cmd_dp_orbits, "orbits of admissible (Z/n)^2 assignments")
    q.add_argument("--n", type=int, default=5)
    q = leaf(dp, "hodge", cmd_dp_hodge, "q and p_g of a del Pezzo cover")
    q.add_argument("--spec")
    q.add_argument("--tuple", help="catalog tuple U1..U4")

    vhs = top.add_parser("vhs", help="cyclic covers of the line").add_subparsers(dest="cmd", required=True)
    q = leaf(vhs, "analyze", cmd_vhs, "eigenspace dimensions and Fujita splitting")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=_ints, required=True)

    kd = top.add_parser("kodaira", help="fibration numerics").add_subparsers(dest="cmd", required=True)
    q = leaf(kd, "slope", cmd_k_slope, "slope of a very simple Kodaira fibration")
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--m", type=_ints, default=[])
    q = leaf(kd, "feasible", cmd_k_feasible, "integer chi window for (g, b)")
    q.add_argument("--g", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q = leaf(kd, "mu", cmd_k_mu, "Zeuthen-Segre residue")
    q.add_argument("--e", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--g", type=int, required=True)
    q = leaf(kd, "scaling", cmd_k_scaling, "fibre genus after Jacobian multiplication")
    q.add_argument("--g", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q = leaf(kd, "tan", cmd_k_tan, "lower bound on singular fibres")
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--g", type=int, required=True)
    q.add_argument("--chi", type=_frac)
    q.add_argument("--deg", type=_frac)
    q = leaf(kd, "basechange", cmd_k_basechange, "slope after a base change")
    for name, typ in (("--K2", _frac), ("--g", int), ("--b", int), ("--d", int), ("--r", int)):
        q.add_argument(name, type=typ, required=True)

    bv = top.add_parser("beauville", help="Beauville structures").add_subparsers(dest="cmd", required=True)
    q = leaf(bv, "search", cmd_beauville, "abelian Beauville structures on (Z/n)^2")
    q.add_argument("--n", type=int, required=True)

    q = top.add_parser("pack", parents=[fmt], help="sphere packing in a finite group")
    q.set_defaults(func=cmd_pack)
    q.add_argument("--table", help="JSON Cayley table")
    q.add_argument("--cyclic", type=int)
    q.add_argument("--dihedral", type=int)
    q.add_argument("--symmetric", type=int)
    q.add_argument("--stabilizers", type=_ints, default=[])
    q.add_argument("--mode", choices=("exact", "greedy"), default="exact")

    cat = top.add_parser("catalog", help="shipped configurations and data").add_subparsers(dest="cmd", required=True)
    leaf(cat, "list", cmd_catalog_list, "list catalog entries")
    q = leaf(cat, "show", cmd_catalog_show, "show one entry")
    q.add_argument("name")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        rep, code = args.func(args)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except (ValueError, KeyError, ArithmeticError, NotImplementedError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=err)
        return EXIT_INVALID
    out.write(render(rep, args.format))
    return code


def main():
    sys.exit(run())

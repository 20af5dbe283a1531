"""End-to-end reports, the regression against the tabulated eight-line torsion, and batch runs."""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

from . import table1
from .arrangement import (LineConfiguration, assumption_star, b1_milnor_boundary,
                          char_poly_and_betti, double_point_count, multiplicity_tuple,
                          parse_arr, parse_catalog_spec, validate)
from .covers import h1_cover, power_of_two_exponent, tower_stats
from .osalgebra import algebra_for, double, omega_bar_prime, resonance
from .plumbing import boundary_manifold, h1

PASS, FAIL, NA = "pass", "fail", "n/a"

CORPUS_DIR = Path(__file__).parent / "data" / "corpus"


class MissingAnnotation(ValueError):
    pass


def _check(ok: Optional[bool], **values) -> dict:
    status = NA if ok is None else (PASS if ok else FAIL)
    return dict(values, status=status)


def load_config(source: Union[str, Path, LineConfiguration]):
    """Return (configuration, annotations, label) from a catalog spec, a path or a configuration."""
    if isinstance(source, LineConfiguration):
        return validate(source), {}, "<config>"
    src = str(source)
    if src.startswith("catalog:"):
        return parse_catalog_spec(src[len("catalog:"):]), {}, src
    path = Path(src)
    config, notes = parse_arr(path.read_text(encoding="utf-8"))
    return config, notes, path.name


def run(config: LineConfiguration, label: str = "", notes: Optional[Dict[str, str]] = None
        ) -> dict:
    """Full report for one arrangement as a JSON-ready dict with stable ordering."""
    validate(config)
    n = config.n
    betti = char_poly_and_betti(config)
    b1F = b1_milnor_boundary(config)
    star = assumption_star(config)
    tup = multiplicity_tuple(config)
    bd = boundary_manifold(config)
    h1U = h1(bd.simplified)
    h1F = h1_cover(bd.simplified, bd.simplified_character, n)
    m = power_of_two_exponent(n)
    tower = tower_stats(bd.simplified, bd.simplified_character) if m is not None else None

    res = None
    alpha0 = None
    double_cover = None
    if n % 2 == 0:
        alg = algebra_for(config)
        res = resonance(double(alg), omega_bar_prime(alg, n), 0)
        alpha0 = res.h1
        double_cover = tower.levels[1] if tower else h1_cover(bd.simplified,
                                                               bd.simplified_character, 2)

    chi = betti.chi_U
    tau2 = h1F.even_torsion
    checks = {
        "betti_formula": _check(h1F.free_rank == b1F, computed=h1F.free_rank, expected=b1F),
        "rank_equality": _check(h1F.free_rank == h1U.free_rank if star else None,
                                computed=h1F.free_rank, expected=h1U.free_rank),
        "boundary_h1": _check(not h1U.torsion and h1U.free_rank == betti.b_U[1] + betti.b_U[2],
                              computed=h1U.to_json(),
                              expected={"free_rank": betti.b_U[1] + betti.b_U[2], "torsion": []}),
        "mod2_monotone": _check(tower.mod2_monotone() if tower else None,
                                computed=[tower.b1_mod2(k) for k in range(m + 1)] if tower else None),
    }
    if alpha0 is not None:
        via_cover = double_cover.mod2_betti - h1U.free_rank
        checks["aomoto_crosscheck"] = _check(alpha0 == via_cover, computed=via_cover,
                                             expected=alpha0)
    else:
        checks["aomoto_crosscheck"] = _check(None)

    applicable = m is not None and star
    main = {
        "applicable": applicable,
        "tau2": tau2,
        "chi_U": chi,
        "alpha0": alpha0,
    }
    if applicable:
        upper = (2 ** m - 1) * chi
        main.update(lower_ok=tau2 >= chi, upper_ok=tau2 <= upper,
                    chain_ok=tau2 >= alpha0 >= chi,
                    rho_zero=all(tower.rho(k) == 0 for k in range(m)))
        checks["main_lower"] = _check(tau2 >= chi, computed=tau2, expected_at_least=chi)
        checks["upper_bound"] = _check(tau2 <= upper, computed=tau2, expected_at_most=upper)
        checks["torsion_chain"] = _check(main["chain_ok"] and main["rho_zero"],
                                         computed=[tau2, alpha0, chi],
                                         rho=[tower.rho(k) for k in range(m)])
    else:
        for name in ("main_lower", "upper_bound", "torsion_chain"):
            checks[name] = _check(None)

    observations: List[str] = []
    table = None
    row = table1.lookup(tup) if n == 8 else None
    if row is not None:
        expected = table1.torsion_of(row.torsion)
        table = {
            "tuple": list(row.tuple),
            "torsion": table1.format_torsion(expected),
            "chi_U": row.chi,
            "star": row.star,
            "remark": row.remark,
            "chi_discrepancy": row.chi != chi,
        }
        checks["table1_match"] = _check(h1F.torsion == expected,
                                        computed=h1F.torsion_str(),
                                        expected=table["torsion"])
        if row.chi != chi:
            observations.append(f"tabulated chi(U)={row.chi} differs from "
                                f"1 - b1(U) + b2(U) = {chi}; the computed value is used")
    else:
        checks["table1_match"] = _check(None)
    if tau2 == chi:
        observations.append("dim Tor(H1(dF)) (x) Z_2 equals chi(U)")
    else:
        observations.append(f"dim Tor(H1(dF)) (x) Z_2 = {tau2} differs from chi(U) = {chi}")
    if star and m is not None:
        conj = set(h1F.torsion) <= {n} and len(h1F.torsion) == max(chi, 0)
        observations.append("torsion is Z_n^chi(U)" if conj else
                            "torsion is not of the form Z_n^chi(U)")
    if not star:
        gcds = sorted({math.gcd(len(f), n) for f in config.flats
                       if math.gcd(len(f), n) > 1})
        observations.append(f"assumption fails; torsion orders {sorted(set(h1F.torsion))}, "
                            f"gcd(multiplicity, n) values {gcds}")

    report = {
        "input": {"label": label, "n": n, "flats": [list(f) for f in config.sorted_flats()]},
        "multiplicity_tuple": list(tup),
        "double_points": double_point_count(config),
        "betti": {"b_M": list(betti.b_M), "b_U": list(betti.b_U), "chi_U": chi,
                  "charpoly": list(betti.charpoly)},
        "b1_milnor_boundary": b1F,
        "assumption_star": star,
        "plumbing": bd.graph.summary(),
        "h1_boundary_manifold": dict(h1U.to_json(), str=str(h1U)),
        "h1_milnor_boundary": dict(h1F.to_json(), str=str(h1F)),
        "tower": tower.to_json() if tower else None,
        "alpha0": alpha0,
        "resonance": res.to_json() if res else None,
        "torsion_bounds": main,
        "checks": checks,
        "observations": observations,
        "table1": table,
    }
    if notes:
        report["annotations"] = dict(sorted(notes.items()))
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def overall_status(report: dict) -> str:
    if "error" in report:
        return FAIL
    statuses = [c["status"] for c in report["checks"].values()]
    return FAIL if FAIL in statuses else PASS


def exit_code(reports: Sequence[dict]) -> int:
    return 2 if any(overall_status(r) == FAIL for r in reports) else 0


# ---- text output -------------------------------------------------------------

def format_table(rows: Sequence[Sequence[str]], header: Sequence[str]) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    lines = [fmt.format(*header), fmt.format(*["-" * w for w in widths])]
    lines += [fmt.format(*map(str, r)) for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def table_row(report: dict) -> List[str]:
    tor = table1.format_torsion(tuple(report["h1_milnor_boundary"]["torsion"]))
    remark = report["table1"]["remark"] if report.get("table1") else ""
    return ["(" + ",".join(map(str, report["multiplicity_tuple"])) + ")", tor,
            str(report["betti"]["chi_U"]), "o" if report["assumption_star"] else "", remark]


TABLE_HEADER = ["tuple", "Tor(H1(dF))", "chi(U)", "(*)", "remark"]


def report_text(report: dict) -> str:
    out = [f"arrangement {report['input']['label']}  n={report['input']['n']}"]
    out.append(format_table([table_row(report)], TABLE_HEADER))
    out.append(f"H1(dU) = {report['h1_boundary_manifold']['str']}")
    out.append(f"H1(dF) = {report['h1_milnor_boundary']['str']}")
    out.append(f"b1(dF) formula = {report['b1_milnor_boundary']}, alpha0 = {report['alpha0']}")
    if report["tower"]:
        out.append("tower: " + ", ".join(lv["str"] for lv in report["tower"]["levels"]))
    rows = []
    for name, c in report["checks"].items():
        vals = {k: v for k, v in c.items() if k != "status"}
        rows.append([name, c["status"], json.dumps(vals, sort_keys=True) if vals else ""])
    out.append(format_table(rows, ["check", "status", "values"]))
    out += [f"note: {o}" for o in report["observations"]]
    return "\n".join(out) + "\n"


# ---- batch -----------------------------------------------------------------

def _run_item(item):
    config, label = item
    try:
        return run(config, label)
    except Exception as exc:  # per-item failure never aborts the batch
        return {"input": {"label": label}, "error": f"{type(exc).__name__}: {exc}"}


def batch(configs: Sequence, parallelism: int = 1) -> List[dict]:
    """Reports for many configurations; output order follows input order."""
    items = [c if isinstance(c, tuple) else (c, "") for c in configs]
    if not items:
        return []
    if parallelism <= 1:
        return [_run_item(it) for it in items]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(_run_item, items))


# ---- regression harness ------------------------------------------------------

def table1_harness(corpus_dir: Union[str, Path, None] = None, parallelism: int = 1) -> dict:
    """Compare computed torsion with the annotations of every ``.arr`` file in a corpus."""
    corpus_dir = Path(corpus_dir) if corpus_dir else CORPUS_DIR
    files = sorted(corpus_dir.glob("*.arr"))
    items, expect = [], []
    for path in files:
        config, notes = parse_arr(path.read_text(encoding="utf-8"))
        if "tuple" not in notes or "torsion" not in notes:
            raise MissingAnnotation(f"{path.name}: needs '#! tuple' and '#! torsion' annotations")
        items.append((config, path.name))
        expect.append((tuple(int(x) for x in notes["tuple"].split()),
                       table1.parse_torsion(notes["torsion"])))
    reports = batch(items, parallelism)
    rows = []
    groups: Dict[tuple, set] = {}
    for rep, (tup, tor) in zip(reports, expect):
        if "error" in rep:
            rows.append({"file": rep["input"]["label"], "error": rep["error"], "match": False})
            continue
        got = tuple(rep["h1_milnor_boundary"]["torsion"])
        got_tuple = tuple(rep["multiplicity_tuple"])
        rows.append({
            "file": rep["input"]["label"],
            "tuple": list(got_tuple),
            "tuple_ok": got_tuple == tup,
            "expected": table1.format_torsion(tor),
            "computed": table1.format_torsion(got),
            "chi_U": rep["betti"]["chi_U"],
            "star": rep["assumption_star"],
            "match": got == tor and got_tuple == tup,
            "checks_ok": overall_status(rep) == PASS,
        })
        groups.setdefault(got_tuple, set()).add(str(rep["h1_milnor_boundary"]["str"]))
    coincide = {",".join(map(str, k)): len(v) == 1 for k, v in sorted(groups.items())}
    return {
        "rows": rows,
        "tuple_groups_coincide": coincide,
        "all_match": all(r["match"] for r in rows),
        "all_checks_ok": all(r.get("checks_ok", False) for r in rows),
    }


def table1_text(summary: dict) -> str:
    rows = [[r["file"], "(" + ",".join(map(str, r.get("tuple", []))) + ")",
             r.get("expected", ""), r.get("computed", r.get("error", "")),
             str(r.get("chi_U", "")), "o" if r.get("star") else "",
             "ok" if r["match"] else "MISMATCH"] for r in summary["rows"]]
    text = format_table(rows, ["file", "tuple", "table", "computed", "chi(U)", "(*)", "result"])
    for k, ok in summary["tuple_groups_coincide"].items():
        text += f"tuple ({k}): homology {'coincides' if ok else 'DIFFERS'} across files\n"
    return text

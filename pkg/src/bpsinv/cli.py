"""Command-line front end.

    bpsinv compute --surface p2 --rank 3 --c1 0 --qorders 4 --format json
    bpsinv compute --surface hirzebruch:1 --rank 2 --c1 0,1 \
        --polarization suitable --qorders 4
    bpsinv check --suite table1

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .exactq import qq
from .cache import ResultCache
from .compute import (
    default_cutoff, p2_genfun, p2_omega_genfun, sigma_genfun,
    sigma_omega_genfun,
)
from .geometry import GeometryError, Polarization, SUITABLE, Surface
from .invariants import InvariantError, extract_table
from .serialize import dumps, genfun_to_obj, table_to_obj


class InputError(ValueError):
    pass


def _parse_surface(text):
    if text == "p2":
        return Surface.p2()
    if text.startswith("hirzebruch:"):
        try:
            return Surface.hirzebruch(int(text.split(":", 1)[1]))
        except ValueError:
            pass
    raise InputError("surface must be p2 or hirzebruch:<ell>")


def _parse_c1(text, surface):
    parts = [p.strip() for p in text.split(",")]
    want = surface.b2
    if len(parts) != want:
        raise InputError("--c1 needs %d component(s) for %s"
                         % (want, surface))
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise InputError("--c1 components must be integers")


def _parse_polarization(text, surface):
    if not surface.rank2:
        return None
    if text is None or text == "suitable":
        return SUITABLE
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError("--polarization must be 'suitable' or '<m>,<n>'")
    try:
        return Polarization.generic(qq(parts[0]), qq(parts[1]))
    except (ValueError, GeometryError, ZeroDivisionError):
        raise InputError("invalid polarization %r" % (text,))


def cmd_compute(args):
    surface = _parse_surface(args.surface)
    c1 = _parse_c1(args.c1, surface)
    J = _parse_polarization(args.polarization, surface)
    if args.rank < 1:
        raise InputError("rank must be positive")
    if args.qorders < 1:
        raise InputError("qorders must be positive")
    cache = ResultCache(args.cache_dir)
    spec = {
        "surface": str(surface), "rank": args.rank, "c1": list(c1),
        "polarization": args.polarization or "suitable",
        "qorders": args.qorders,
    }
    key = cache.key_of("compute", spec)
    value = cache.get(key)
    if value is None:
        value = _run_compute(surface, args.rank, c1, J, args.qorders)
        cache.put(key, value)
    _emit(value, args.format)
    return 0


def _run_compute(surface, r, c1, J, qorders):
    cutoff = default_cutoff(r, surface, qorders)
    if surface.rank2:
        if r > 4 or (J != SUITABLE and r > 3):
            raise InputError("rank %d unsupported at this polarization" % r)
        h = sigma_genfun(r, c1, surface.ell, J, cutoff)
        omega = sigma_omega_genfun(r, c1, surface.ell, J, cutoff)
    else:
        if r > 3:
            raise InputError("rank <= 3 on the plane")
        h = p2_genfun(r, c1[0], cutoff)
        omega = p2_omega_genfun(r, c1[0], cutoff)
    table = extract_table(omega)
    return {"genfun": genfun_to_obj(h), "table": table_to_obj(table)}


def _emit(value, fmt):
    if fmt == "json":
        print(dumps(value))
        return
    rows = value["table"]["rows"]
    if fmt == "csv":
        width = max((len(r["betti"]) for r in rows), default=0)
        cols = ["c2", "delta", "dim", "euler"] + \
            ["b%d" % (2 * i) for i in range(width)]
        print(",".join(cols))
        for r in rows:
            betti = list(r["betti"]) + [""] * (width - len(r["betti"]))
            print(",".join(str(x) for x in
                           [r["c2"], r["delta"], r["dim"], r["euler"]] + betti))
        return
    g = value["genfun"]
    print("h_{%s,%s} on %s, flavor %s, %d stored exponents"
          % (g["rank"], g["c1"], g["surface"], g["flavor"],
             len(g["series"]["terms"])))
    for r in rows:
        print("  c2=%-3s dim=%-3s euler=%-8s betti=%s"
              % (r["c2"], r["dim"], r["euler"],
                 ",".join(str(b) for b in r["betti"])))


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------

def _suite_core():
    import random
    from .series import QSeries, VPoly, WRat

    rng = random.Random(0)

    def rand_series(invertible=False):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            e = qq(rng.randint(-2, 4), rng.choice([1, 2, 8]))
            terms[e] = WRat(VPoly({rng.randint(-2, 2): rng.randint(-3, 3)}))
        s = QSeries(terms, qq(rng.randint(2, 4)))
        if invertible and s.is_zero():
            s = QSeries({0: 1}, s.cutoff)
        return s

    for _ in range(200):
        a, b, c = rand_series(), rand_series(), rand_series()
        if not ((a + b) * c).eq_to_cutoff(a * c + b * c):
            return False
        if not ((a * b) * c).eq_to_cutoff(a * (b * c)):
            return False
    for _ in range(200):
        a = rand_series(invertible=True)
        if not (a * a.invert()).eq_to_cutoff(QSeries.one()):
            return False
    return True


def _suite_table1():
    from .blowup import p2_table
    expect = {
        3: (18, (1, 1, 2, 2, 2, 2)),
        4: (216, (1, 2, 5, 9, 15, 19, 22, 23, 24)),
        5: (1512, (1, 2, 6, 12, 25, 43, 70, 98, 125, 142, 154, 156)),
        6: (8109, (1, 2, 6, 13, 28, 53, 99, 165, 264, 383, 515, 631,
                   723, 774, 795)),
    }
    table = p2_table(3, 0, qq(6))
    rows = {row.c2: row for row in table.rows}
    for c2, (euler, betti) in expect.items():
        row = rows.get(c2)
        if row is None or row.euler != euler:
            return False
        if row.betti[:row.dim // 2 + 1] != betti:
            return False
    return True


def _suite_routes():
    from .blowup import p2_genfun
    from .hn import suitable_genfun_closed, suitable_genfun_recursive
    ok = True
    for a in range(4):
        closed = suitable_genfun_closed(4, a, 1, qq(2))
        rec = suitable_genfun_recursive(4, (0, (-a) % 4), 1, qq(2))
        ok = ok and closed.series.eq_to_cutoff(rec.series, qq(2))
    hA = p2_genfun(3, 1, qq(2), route_k=0)
    hB = p2_genfun(3, 1, qq(2), route_k=1)
    ok = ok and hA.series.eq_to_cutoff(hB.series, qq(2))
    hA = p2_genfun(2, 0, qq(3), route_k=0)
    hB = p2_genfun(2, 0, qq(3), route_k=1)
    ok = ok and hA.series.eq_to_cutoff(hB.series, qq(3))
    return ok


SUITES = {"core": _suite_core, "table1": _suite_table1, "routes": _suite_routes}


def cmd_check(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        futures = {name: pool.submit(SUITES[name]) for name in names}
        for name in names:
            try:
                ok = bool(futures[name].result())
            except Exception:
                ok = False
            results.append({"name": name, "ok": ok})
    if args.format == "json":
        print(dumps({"results": results}))
    else:
        for r in results:
            print("%s %s" % ("PASS" if r["ok"] else "FAIL", r["name"]))
    return 0 if all(r["ok"] for r in results) else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="bpsinv",
        description="Exact BPS-invariant generating functions for sheaves on "
                    "Hirzebruch surfaces and the projective plane")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("compute", help="compute one generating function")
    pc.add_argument("--surface", required=True,
                    help="p2 or hirzebruch:<ell>")
    pc.add_argument("--rank", type=int, required=True)
    pc.add_argument("--c1", required=True,
                    help="comma list in the surface basis")
    pc.add_argument("--polarization", default=None,
                    help="'suitable' or '<m>,<n>' (Hirzebruch only)")
    pc.add_argument("--qorders", type=int, default=4)
    pc.add_argument("--format", choices=["json", "csv", "text"],
                    default="text")
    pc.add_argument("--cache-dir", default=None)
    pc.add_argument("--jobs", type=int, default=1)
    pc.set_defaults(func=cmd_compute)

    pk = sub.add_parser("check", help="run a verification suite")
    pk.add_argument("--suite", choices=["core", "table1", "routes", "all"],
                    default="all")
    pk.add_argument("--format", choices=["json", "text"], default="text")
    pk.add_argument("--jobs", type=int, default=1)
    pk.set_defaults(func=cmd_check)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    except (GeometryError, InvariantError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Build every reachable fine structure at the given orders and check coverage and round trip."""
import argparse
import time

from skolemkit.designs import expand, extract_fine_structure, fine_cts, reachable_fine, validate_coverage


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--v", type=int, nargs="+", default=[25, 31, 49])
    ap.add_argument("--lambdas", type=int, nargs="+", default=[2, 3, 4])
    args = ap.parse_args()
    for v in args.v:
        for lam in args.lambdas:
            if lam > 2 and v % 24 not in (1, 7):
                continue
            t = time.perf_counter()
            targets = reachable_fine(v, lam)
            kinds = ("DTS", "MTS") if v % 6 == 1 else ("MTS",)
            for c in targets:
                d = fine_cts(v, lam, c)
                assert extract_fine_structure(d).c == tuple(c)
                for kind in kinds:
                    assert validate_coverage(expand(d, kind)).valid
            print(f"v={v} lambda={lam}: {len(targets)} fine structures ok ({time.perf_counter() - t:.1f}s)")


if __name__ == "__main__":
    main()

"""Runtime of the automata engine on the width family and the naive blowup.

    python3 demos/scaling.py [--repeats N]
"""
import argparse

from capc.bench import band, loglog_slope, measure_blowup, measure_scaling, report

ap = argparse.ArgumentParser()
ap.add_argument("--repeats", type=int, default=5)
args = ap.parse_args()

pts = measure_scaling(repeats=args.repeats)
print(report(pts))
print(f"\nmax/min of time/(|U|*d): {band(p.per_node_width for p in pts):.2f}")
print(f"max/min of time/size(U): {band(p.per_size for p in pts):.2f}")
print(f"mean size(U)/|U|:        {sum(p.size / p.universe for p in pts) / len(pts):.2f}")

print("\nnaive engine on T_n against its unfolding")
print(f"{'n':>3}{'calls':>8}{'naive ms':>11}{'automata ms':>13}")
blow = measure_blowup(repeats=3)
for p in blow:
    print(f"{p.n:>3}{p.naive_calls:>8}{p.naive_seconds * 1e3:>11.3f}{p.automata_seconds * 1e3:>13.3f}")
print(f"log-log slope of naive time: {loglog_slope([p.n for p in blow], [p.naive_seconds for p in blow]):.2f}")

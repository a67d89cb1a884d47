"""Oracle run for construction.py before freezing test values."""
import sys
from fractions import Fraction
from math import isqrt

sys.path.insert(0, "src")

from sweepout.construction import (
    ap_count_in, ap_count_congruent, ap_residue_spread,
    build_plan, plan_from_dict, PerturbedSequence)
from sweepout.sequences import SquareSequence, BlockSequence
from sweepout.schedules import schedule_from_spec

# --- AP helpers vs brute ---------------------------------------------------
import random
rng = random.Random(7)
for _ in range(500):
    first = rng.randrange(-50, 200)
    step = rng.randrange(1, 30)
    count = rng.randrange(0, 40)
    members = [first + i * step for i in range(count)]
    lo = rng.randrange(-60, 260)
    hi = lo + rng.randrange(0, 300)
    want = sum(1 for x in members if lo <= x < hi)
    got = ap_count_in(first, step, count, lo, hi)
    assert got == want, (first, step, count, lo, hi, got, want)
    m = rng.randrange(1, 25)
    r = rng.randrange(0, m)
    want = sum(1 for x in members if x % m == r)
    got = ap_count_congruent(first, step, count, r, m)
    assert got == want, (first, step, count, r, m, got, want)
    spread = ap_residue_spread(first, step, count, m)
    want_spread = [sum(1 for x in members if x % m == c) for c in range(m)]
    assert spread == want_spread
print("AP helpers: 500 random cases OK")

# --- A default plan --------------------------------------------------------
sched = schedule_from_spec({"variant": "theorem-a", "q": 2,
                            "gauge": {"type": "power", "a": 0.5}})
sq = SquareSequence()
plan = build_plan(sched, sq, 3)
ns = [ch.n for ch in plan.intervals]
counts = [ch.count_at_n for ch in plan.intervals]
inserts = [ch.insert_count for ch in plan.intervals]
overlaps = [ch.overlap for ch in plan.intervals]
us = [ch.u for ch in plan.intervals]
firsts = [ch.first for ch in plan.intervals]
print("A ns      :", ns)
print("A counts  :", counts)
print("A inserts :", inserts)
print("A overlaps:", overlaps)
print("A stages  :", us)
print("A firsts  :", firsts)
print("A E_1     :", list(plan.interval(1).elements()))
assert ns == [2, 2178, 4530050, 9688598402]
assert counts == [1, 46, 2128, 98430]
assert inserts == [1, 2, 48, 2176]
assert overlaps == [0, 0, 0, 0]
assert list(plan.interval(1).elements()) == [2561, 3073]
assert plan.interval(3).first == 9688598531

# brute overlap check: no inserted element is a perfect square
for ch in plan.intervals:
    for x in ch.elements():
        assert isqrt(x) ** 2 != x, x
print("A overlap brute check OK (no insert is a square)")

rows = plan.checkpoints()
for row in rows:
    print("  checkpoint", row.k, "upto", row.upto, "ratio", row.ratio,
          "tail" if row.tail else "")
assert [r.ratio for r in rows] == [
    Fraction(1, 46), Fraction(3, 2128), Fraction(51, 98430),
    Fraction(2227, 139201)]
assert [r.tail for r in rows] == [False, False, False, True]

rep = plan.constraint_report()
assert all(c.ok for c in rep), [c for c in rep if not c.ok]
print("A constraint report: all", len(rep), "checks pass")

# brute delta_count against explicit sets up to 10**7
inserted = set()
for ch in plan.intervals:
    inserted.update(x for x in ch.elements() if x <= 10**7)
squares = {i * i for i in range(1, isqrt(10**7) + 2)}
pert = plan.perturbed()
for N in [1, 2, 3, 2178, 2561, 2562, 3073, 3074, 10**4, 4530050,
          4530178, 4530179, 5 * 10**6, 10**7]:
    want = len({x for x in inserted if 1 <= x < N} - squares)
    got = plan.delta_count(N)
    assert got == want, (N, got, want)
    wantc = len({x for x in (inserted | squares) if 1 <= x < N})
    gotc = pert.count(N)
    assert gotc == wantc, (N, gotc, wantc)
print("A delta_count / perturbed count vs brute OK")

# perturbed residue arithmetic vs brute
union = sorted(x for x in (inserted | squares) if x < 10**5)
for m in (1, 2, 7, 512):
    want = [sum(1 for x in union if x % m == c) for c in range(m)]
    got = pert.residue_counts(10**5, m)
    assert got == want, m
    for (lo, hi) in [(1, 10**5), (2561, 3074), (100, 5000)]:
        for r in range(0, m, max(1, m // 5)):
            want1 = sum(1 for x in union if lo <= x < hi and x % m == r)
            got1 = pert.count_congruent_in(lo, hi, r, m)
            assert got1 == want1, (lo, hi, r, m, got1, want1)
want = [x for x in union if 2000 <= x < 5000]
assert pert.elements_in(2000, 5000) == want
print("A perturbed residue counts / elements_in vs brute OK")

# roundtrip through dict
plan2 = plan_from_dict(plan.to_dict())
assert [c.n for c in plan2.intervals] == ns
assert [c.first for c in plan2.intervals] == firsts
assert plan2.delta_count(10**7) == plan.delta_count(10**7)
print("A plan dict roundtrip OK")

# --- B toy plan ------------------------------------------------------------
schedb = schedule_from_spec({"variant": "theorem-b",
                             "gauge": {"type": "log-power", "j": 1}})
bl = BlockSequence()
planb = build_plan(schedb, bl, 1)
print("B ns:", [ch.n for ch in planb.intervals],
      "inserts:", [ch.insert_count for ch in planb.intervals],
      "E:", [list(ch.elements()) for ch in planb.intervals])
assert [ch.n for ch in planb.intervals] == [8, 256]
assert list(planb.interval(0).elements()) == [8]
assert list(planb.interval(1).elements()) == [257, 259]
assert all(c.ok for c in planb.constraint_report())
rowsb = planb.checkpoints()
print("B checkpoints:", [(r.upto, r.delta, r.count, r.ratio) for r in rowsb])

# brute for B toy
blocks = set(bl.elements_in(1, 4096))
insb = {8, 257, 259}
pb = planb.perturbed()
for N in range(1, 1200):
    want = len({x for x in insb if x < N} - blocks)
    assert planb.delta_count(N) == want, N
    assert pb.count(N) == len({x for x in (insb | blocks) if 1 <= x < N}), N
assert pb.elements_in(1, 600) == sorted(
    x for x in (insb | blocks) if x < 600)
print("B toy brute check OK")

# --- lemma toy plan --------------------------------------------------------
schedl = schedule_from_spec({"variant": "lemma-14", "k": 1,
                             "gauge": {"type": "log-power", "j": 1},
                             "psi": {"type": "log-power", "j": 1}})
planl = build_plan(schedl, bl, 1)
print("L ns:", [ch.n for ch in planl.intervals],
      "E:", [list(ch.elements()) for ch in planl.intervals])

# --- stage boundary behaviour: a k_max=5 A plan crosses into stage 2 ------
plan5 = build_plan(sched, sq, 5)
print("A k_max=5 stages:", [ch.u for ch in plan5.intervals])
print("A k_max=5 ns    :", [ch.n for ch in plan5.intervals])
print("A k_max=5 counts:", [ch.count_at_n for ch in plan5.intervals])
print("A k_max=5 inserts:", [ch.insert_count for ch in plan5.intervals])
assert all(c.ok for c in plan5.constraint_report())
rows5 = plan5.checkpoints()
print("A k_max=5 ratios:", [str(r.ratio) for r in rows5])
print("A k_max=5 float :", [float(r.ratio) for r in rows5])

print("oracle complete")

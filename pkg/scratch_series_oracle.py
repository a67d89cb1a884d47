"""Oracle run for series.py anchors. Scratch file, not part of the package."""
import time
from fractions import Fraction

from sweepout.gauges import _exp2_exact
from sweepout.schedules import schedule_from_spec as make_schedule
from sweepout.exact import RootValue
from sweepout import series as S

A = make_schedule({"variant": "theorem-a", "q": 2,
                   "gauge": {"type": "power", "a": 0.5}})
B1 = make_schedule({"variant": "theorem-b",
                    "gauge": {"type": "log-power", "j": 1}})
B2 = make_schedule({"variant": "theorem-b",
                    "gauge": {"type": "log-power", "j": 2}})
B32 = make_schedule({"variant": "theorem-b",
                     "gauge": {"type": "log-power", "j": 1.5}})
BLL = make_schedule({"variant": "theorem-b", "gauge": {"type": "log-log"}})
L = make_schedule({"variant": "lemma-14", "k": 1,
                   "gauge": {"type": "log-power", "j": 1},
                   "psi": {"type": "log-power", "j": Fraction(1, 3)}})

print("== theorem_a ==")
rep = S.theorem_a_series(A, 10)
r2 = rep.rows[1]
print("u=2 term", r2.term, "bound", r2.bound, "ok", r2.ok)
print("u=1 term", rep.rows[0].term, "bound", rep.rows[0].bound)
print("all_ok", rep.all_ok, "sum", rep.partial_sum, "cmp", rep.comparison_bound)
print("meta", rep.meta)
t0 = time.time()
rep = S.theorem_a_series(A, 10 ** 4)
t1 = time.time()
print("u_max=1e4 all_ok", rep.all_ok, "sum", rep.partial_sum,
      "time %.2fs" % (t1 - t0))

print()
print("== theorem_b j=1 p=2 ==")
rep = S.theorem_b_series(B1, 2, 100)
print("sum", repr(rep.partial_sum), "== 0.500030517578125:",
      rep.partial_sum == 0.500030517578125)
print("meta", {k: rep.meta[k] for k in
               ("growth", "n_hat", "c", "C", "K", "tail_constant",
                "split_point", "head_cut", "head_bound", "phi_target",
                "sum_vs_head", "sum_vs_phi")})
print("all_ok", rep.all_ok)
print("row u=1", rep.rows[0])
print("row u=2", rep.rows[1])

print()
print("== theorem_b j=1 p=21/20 ==")
rep = S.theorem_b_series(B1, Fraction(21, 20), 100)
print("sum", rep.partial_sum, "meta K", rep.meta["K"], "A",
      rep.meta["tail_constant"], "split", rep.meta["split_point"],
      "cut", rep.meta["head_cut"], "head", rep.meta["head_bound"],
      "phi", rep.meta["phi_target"])
print("all_ok", rep.all_ok, "sum_vs_head", rep.meta["sum_vs_head"],
      "sum_vs_phi", rep.meta["sum_vs_phi"])

print()
print("== theorem_b grid j=1 ==")
t0 = time.time()
grid = S.theorem_b_grid(B1, 100, 20)
t1 = time.time()
print("k_p_independent", grid.k_p_independent, "a_prime", grid.a_prime,
      "feed_ok", grid.feed_ok, "all_ok", grid.all_ok, "time %.2fs" % (t1 - t0))

print()
print("== theorem_b j=2 p=2 ==")
rep = S.theorem_b_series(B2, 2, 100)
print("sum", rep.partial_sum, "n_hat", rep.meta["n_hat"], "K", rep.meta["K"],
      "A", rep.meta["tail_constant"], "all_ok", rep.all_ok,
      "head_cut", rep.meta["head_cut"])

print()
print("== theorem_b j=3/2 p=2 ==")
rep = S.theorem_b_series(B32, 2, 100)
print("sum", rep.partial_sum, "n_hat", rep.meta["n_hat"], "K", rep.meta["K"],
      "all_ok", rep.all_ok)

print()
print("== theorem_b log-log p=2 ==")
rep = S.theorem_b_series(BLL, 2, 100)
print("growth", rep.meta["growth"], "sum", rep.partial_sum,
      "K", rep.meta["K"], "all_ok", rep.all_ok,
      "sum_vs_head", rep.meta["sum_vs_head"],
      "sum_vs_phi", rep.meta["sum_vs_phi"],
      "phi", rep.meta["phi_target"])

print()
print("== fixed family, log-log ==")
t0 = time.time()
rows = S.fixed_family_check(BLL, 40, (2, 4, 8), 20)
t1 = time.time()
bad = [r for r in rows if not r["ok"]]
print("rows", len(rows), "bad", len(bad), "time %.2fs" % (t1 - t0))
p2 = [r for r in rows if r["p"] == 2]
for r in p2:
    print("  n", r["n"], "sum", r["partial_sum"], "K", r["K"],
          "head", r["head_bound"], "A", r["tail_constant"], "ok", r["ok"])

print()
print("== fixed family, j=1 (poly floor n=2 only should pass premise) ==")
rows = S.fixed_family_check(B1, 40, (2, 4, 8), 20)
for n in (2, 4, 8):
    sub = [r for r in rows if r["n"] == n]
    print("  n", n, "all dominate", all(r["dominates"] for r in sub),
          "all ok", all(r["ok"] for r in sub))

print()
print("== lemma j=1 psi j=1/3 k=1 ==")
# hand anchor first: u=2 p=2 exact row
g = Fraction(4)
t = L.psi.value_log2_exact(g)
print("t", t, "M(2)", L.modulus(2))
doubled = L.insertion_fraction(2) * 2
value = L.modulus(2) * doubled.pow_fraction(Fraction(2))
bound = Fraction(4 * 2) / _exp2_exact(g * 1, 1 << 22)
print("value", value, float(value), "bound", bound, float(bound),
      "value<=bound", not value > bound)

rep = S.lemma_series(L, 2, 40)
print("row u=2", rep.rows[1])
print("sum", rep.partial_sum, "meta", {k: rep.meta[k] for k in
      ("growth", "n_hat", "K", "tail_constant", "split_point",
       "head_bound", "sum_vs_head")})
print("all_ok", rep.all_ok)

t0 = time.time()
rep = S.lemma_series(L, Fraction(11, 10), 100)
t1 = time.time()
print("u_max=100 p=11/10 all_ok", rep.all_ok, "sum", rep.partial_sum,
      "time %.2fs" % (t1 - t0))

t0 = time.time()
reports, monotone = S.lemma_grid(L, 40, 20)
t1 = time.time()
print("grid monotone", monotone, "all rows ok",
      all(r.all_ok for r in reports), "time %.2fs" % (t1 - t0))
print("sums p=2 ->", reports[0].partial_sum, " p=21/20 ->",
      reports[-1].partial_sum)

print()
print("== validation ==")
for fn, args in [(S.theorem_a_series, (B1, 5)),
                 (S.theorem_b_series, (A, 2, 5)),
                 (S.lemma_series, (A, 2, 5))]:
    try:
        fn(*args)
        print("MISSED variant check", fn.__name__)
    except Exception as e:
        print("ok", fn.__name__, type(e).__name__, e)
for p in (1, 3, Fraction(5, 2)):
    try:
        S.theorem_b_series(B1, p, 5)
        print("MISSED p check", p)
    except Exception as e:
        print("ok p", p, type(e).__name__)
try:
    S.theorem_a_series(A, 0)
    print("MISSED u_max check")
except Exception as e:
    print("ok u_max", type(e).__name__)
try:
    S.default_p_grid(0)
    print("MISSED grid check")
except Exception as e:
    print("ok grid", type(e).__name__)
print("grid", S.default_p_grid(4))

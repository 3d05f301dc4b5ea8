import time
from k3lab.k3lattice import (builtin, certify_ample, certify_bn_general,
                             certify_nef, pencil_census, enumerate_slice,
                             verify_fiber_chain_genus8, max_admissible_size,
                             bordered_gram, moduli_dimensions,
                             genus4_global_count, lm_invariants,
                             basis_change_check, GramLattice,
                             PolarizedLattice, DivisorClass)
from k3lab.exactlin import signature

t_start = time.perf_counter()
checks = 0


def ok(cond, label):
    global checks
    checks += 1
    if not cond:
        raise AssertionError(label)
    print(f"  ok {label}")


# --- ampleness ---
t0 = time.perf_counter()
for name in ["U3", "M6"] + [f"N{i}" for i in range(1, 10)]:
    c = certify_ample(builtin(name))
    ok(c.passed, f"ample {name} PASS")
fixture = PolarizedLattice(GramLattice([[6, 0], [0, -2]]),
                           DivisorClass([1, 0]))
c = certify_ample(fixture)
ok(not c.passed and set(c.witnesses) == {(0, -1), (0, 1)},
   f"ample fixture FAIL with paired witnesses {c.witnesses}")
print(f"[ample block {time.perf_counter()-t0:.2f}s]")

# --- Brill-Noether ---
t0 = time.perf_counter()
for name in ["U3", "M6"] + [f"N{i}" for i in range(1, 9)]:
    c = certify_bn_general(builtin(name))
    ok(c.passed, f"bn {name} PASS")
c = certify_bn_general(builtin("N9"))
ok(not c.passed, "bn N9 FAIL (expected)")
wit = ((-3, 1, 1, 1, 1, 1, 1, 1, 1, 1), (4, -1, -1, -1, -1, -1, -1, -1, -1, -1), 2, 6)
ok(wit in c.witnesses, "bn N9 witness (-3,1^9)/(4,-1^9) h0 2*6")
bnfix = PolarizedLattice(GramLattice([[10, 3], [3, 0]]), DivisorClass([1, 0]))
c = certify_bn_general(bnfix)
ok(not c.passed, f"bn fixture [[10,3],[3,0]] FAIL {c.witnesses[:2]}")
print(f"[bn block {time.perf_counter()-t0:.2f}s]")

# --- nef ---
t0 = time.perf_counter()
m6 = builtin("M6")
for j in range(1, 5):
    e = [0] * 5
    e[j] = 1
    c = certify_nef(m6, e)
    ok(c.passed, f"nef M6 E{j} PASS")
c = certify_nef(m6, [2, -1, -1, -1, -1])
ok(c.passed, "nef M6 (2,-1,-1,-1,-1) PASS")
n9 = builtin("N9")
e1 = [0] * 10
e1[1] = 1
c = certify_nef(n9, e1)
ok(not c.passed and c.details.get("reason") == "obstructing-curve",
   "nef N9 E1 FAIL obstructing-curve")
obst = c.details["obstructing_class"]
pair = sum(obst[i] * g for i, g in enumerate(
    [n9.pairing(tuple(1 if k == r else 0 for k in range(10)), e1)
     for r in range(10)]))
ok(n9.pairing(obst, e1) < 0, f"N9 obstruction pairs negative: {obst}")
u3 = builtin("U3")
c = certify_nef(u3, [0, 1])
ok(c.passed, "nef U3 E PASS")
print(f"[nef block {time.perf_counter()-t0:.2f}s]")

# --- censuses ---
t0 = time.perf_counter()
cen = pencil_census(u3, 3)
ok(set(cen.classes) == {(0, 1), (1, -1)}, f"census U3 d=3 {cen.classes}")
cen = pencil_census(m6, 4)
ok(cen.count == 5, f"census M6 d=4 count 5 {cen.classes}")
sums = [sum(col) for col in zip(*cen.classes)]
ok(sums == [2, 0, 0, 0, 0], f"census M6 classes sum to 2L {sums}")
for i in range(1, 9):
    cen = pencil_census(builtin(f"N{i}"), 5)
    ok(cen.count == i, f"census N{i} d=5 count {cen.count} == {i}")
cen = pencil_census(n9, 5)
ok(cen.details["raw_isotropic"] == 9 and cen.count == 0,
   f"census N9 raw 9, nef-certified 0")
print(f"[census block {time.perf_counter()-t0:.2f}s]")

# --- fiber chains ---
t0 = time.perf_counter()
for j in range(1, 10):
    e = [0] * 10
    e[j] = 1
    r = verify_fiber_chain_genus8(n9, e)
    ok(r["status"] == "PASS", f"fiber chain N9 E{j} PASS")
n1 = builtin("N1")
r = verify_fiber_chain_genus8(n1, [0, 1])
ok(r["status"] == "PASS", "fiber chain N1 PASS")
print(f"[chain block {time.perf_counter()-t0:.2f}s]")

# --- rank bounds / signatures ---
t0 = time.perf_counter()
ok(max_admissible_size(8, 5, 2) == 10, "max_admissible_size(8,5,2)=10")
ok(max_admissible_size(6, 4, 2) == 5, "max_admissible_size(6,4,2)=5")
ok(max_admissible_size(4, 3, 3) == 2, "max_admissible_size(4,3,3)=2")
sig = signature(bordered_gram(6, 4, 2, 6))
ok(sig[0] + sig[2] >= 2 or sig[0] >= 2,
   f"bordered(6,4,2,6) has >=2 nonneg eigenvalues: sig {sig}")
sig = signature(bordered_gram(8, 5, 2, 11))
ok(sig[0] >= 2, f"bordered(8,5,2,11) has >=2 positive: sig {sig}")
print(f"[rank block {time.perf_counter()-t0:.2f}s]")

# --- moduli dims, counts, LM invariants, basis changes ---
ok(moduli_dimensions(u3.lattice, 4) == (18, 22), "moduli dims genus 4")
ok(moduli_dimensions(m6.lattice, 6) == (15, 21), "moduli dims genus 6")
for i in range(1, 10):
    got = moduli_dimensions(builtin(f"N{i}").lattice, 8)
    ok(got == (19 - i, 27 - i), f"moduli dims genus 8 i={i}: {got}")
gc = genus4_global_count()
ok((gc["quadrics"], gc["cubics"], gc["pgl"], gc["total"])
   == (14, 29, 24, 19), f"genus4 global counts {gc}")
inv = lm_invariants(8, 5)
ok(inv["rank"] == 2 and inv["c1_sq"] == 14 and inv["c2"] == 5
   and inv["chi"] == 6, f"lm(8,5) {inv}")
inv = lm_invariants(6, 4)
ok(inv["chi"] == 5, f"lm(6,4) {inv}")
inv = lm_invariants(4, 3)
ok(inv["chi"] == 4, f"lm(4,3) {inv}")

res = basis_change_check(u3.lattice, [[0, 1], [1, -1]],
                         [[0, 3], [3, 0]])
ok(res, "basis change U3 -> [[0,3],[3,0]]")
sbasis = [[-1, 1, 1, 1, 1],
          [-1, 0, 1, 1, 1],
          [-1, 1, 0, 1, 1],
          [-1, 1, 1, 0, 1],
          [-1, 1, 1, 1, 0]]
target = [[2 if i == j == 0 else (-2 if i == j else 0) for j in range(5)]
          for i in range(5)]
res = basis_change_check(m6.lattice, sbasis, target)
ok(res, "basis change M6 s-basis -> diag(2,-2,-2,-2,-2)")

print(f"\nALL {checks} CHECKS PASSED in {time.perf_counter()-t_start:.2f}s")

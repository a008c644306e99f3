#!/usr/bin/env python3
# Independent reference computations for the scalar/poly/linalg/crt tests.
# Run from anywhere; prints the frozen values pasted into the C++ tests.
from fractions import Fraction
from itertools import product

# --- Tonelli / quadratic residues --------------------------------------------
p = 1000003
for a in (2, 3, 5, 10):
    ls = pow(a, (p - 1) // 2, p)
    r = None
    if ls == 1:
        for x in range(p):
            if x * x % p == a:
                r = x
                break
    print(f"sqrt({a}) mod {p}:", "none" if ls != 1 else f"{min(r, p - r)}")

# --- polynomial discriminant -------------------------------------------------
# disc of prod (X - i), i = 0..6  equals prod_{i<j} (i-j)^2
d = 1
for i in range(7):
    for j in range(i + 1, 7):
        d *= (i - j) ** 2
print("disc prod(X-i), i=0..6:", d)

# resultant of (X^2+1) and (X^3+2X+7) = prod over roots: res(A,B) = lc(A)^degB * prod B(alpha_i)
# alpha = +-i: B(i) = i^3+2i+7 = -i+2i+7 = 7+i ; B(-i) = 7-i ; product = 50
print("res(X^2+1, X^3+2X+7):", 50)

# --- RREF / nullspace over F7 and Q -----------------------------------------
def rref(mat, field_inv, neg):
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0])
    piv = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        sel = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = field_inv(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a + neg(f * b) for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    return m, piv

P = 7
fp_inv = lambda x: pow(x % P, P - 2, P)
fp_neg = lambda x: (-x) % P
m, piv = rref([[1, 1]], fp_inv, fp_neg)
# nullspace: free col 1 -> v[1]=1, v[0]=-rref[0][1]; then rref the basis rows
v = [fp_neg(m[0][1]), 1]
lead = next(x for x in v if x)
v = [x * fp_inv(lead) % P for x in v]
print("nullspace [1 1] over F7:", v)

q_inv = lambda x: Fraction(1) / x
q_neg = lambda x: -x
A = [[Fraction(x) for x in row] for row in
     [[2, 4, 1, 0], [0, 0, 3, 6], [1, 2, 2, 3]]]
m, piv = rref(A, q_inv, q_neg)
print("rref pivots:", piv)
print("rref rows:", [[str(x) for x in row] for row in m[: len(piv)]])
free = [c for c in range(4) if c not in piv]
basis = []
for f in free:
    v = [Fraction(0)] * 4
    v[f] = Fraction(1)
    for i, c in enumerate(piv):
        v[c] = -m[i][f]
    basis.append(v)
bm, _ = rref(basis, q_inv, q_neg)
print("nullspace basis:", [[str(x) for x in row] for row in bm])

det_m = [[Fraction(x) for x in r] for r in [[2, 1, 5], [3, 0, 4], [7, 2, 9]]]
# Laplace by hand: det = 2*(0*9-4*2) - 1*(3*9-4*7) + 5*(3*2-0*7)
print("det:", 2 * (0 * 9 - 4 * 2) - 1 * (3 * 9 - 4 * 7) + 5 * (3 * 2 - 0 * 7))

# --- CRT / rational reconstruction ------------------------------------------
p1, p2 = 101, 103
M = p1 * p2
x = Fraction(-22, 7)
r1 = (-22) * pow(7, -1, p1) % p1
r2 = (-22) * pow(7, -1, p2) % p2
# combine
inv = pow(p1, -1, p2)
t = (r2 - r1) * inv % p2
comb = r1 + p1 * t
print("residues:", r1, r2, "combined:", comb)

def recon(r, M):
    best = None
    for v in range(1, int((M / 2) ** 0.5) + 1):
        u = v * r % M
        if u > M // 2:
            u -= M
        if 2 * u * u <= M and Fraction(u, v).denominator == v:
            # gcd(u,v)=1 via Fraction canonicalization check
            if (u - v * r) % M == 0:
                return (u, v)
    return None

print("reconstruct -22/7:", recon(comb, M))
# a residue with no small preimage: search one
for r in range(2, M):
    if recon(r, M) is None:
        print("no-preimage residue:", r)
        break

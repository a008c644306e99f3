# Independent oracle for the two-torsion translation matrices W_T and the
# 36x64 Gram-style matrix of degree-2 monomials at the torsion images.
# Split curve Y^2 = X(X-1)...(X-6) reduced mod 101. Frozen outputs are cited
# in tests/test_translations.cpp.

from itertools import combinations
import random

import numpy as np

from relations_oracle import (cantor_add, canonical, eval_row, kappa,
                              kernel_vectors, monomials, pmul, r1_vector,
                              rref_mod, trim, w1_points)

p = 101
fq = [0, 720, -1764, 1624, -735, 175, -21, 1]
f = tuple(x % p for x in fq)
fx = trim(list(f))
roots = [x for x in range(p) if sum(f[i] * pow(x, i, p) for i in range(8)) % p == 0]
print("roots of f mod 101:", roots)

# torsion classes: subsets of roots, size 0..3, by size then lex by root index
def two_torsion():
    out = [([1], [])]
    for d in (1, 2, 3):
        for S in combinations(range(len(roots)), d):
            a = [1]
            for i in S:
                a = pmul(a, [(-roots[i]) % p, 1], p)
            out.append((a, []))
    return out


def translation_matrix(T, samples):
    rows = []
    for P in samples:
        x = canonical(kappa(f, P[0], P[1], p), p)
        PT = cantor_add(fx, P, T, p)
        y = canonical(kappa(f, PT[0], PT[1], p), p)
        for i in range(8):
            for j in range(i + 1, 8):
                row = [0] * 64
                for k in range(8):
                    row[i * 8 + k] = x[k] * y[j] % p
                    row[j * 8 + k] = (-(x[k] * y[i])) % p
                rows.append(row)
    rank, piv, A = rref_mod(rows, p)
    kv = kernel_vectors(rank, piv, A, p)
    assert len(kv) == 1, (rank, len(kv))
    v = kv[0]
    i0 = next(i for i, e in enumerate(v) if e)
    inv = pow(v[i0], p - 2, p)
    return [e * inv % p for e in v]


def main():
    tors = two_torsion()
    assert len(tors) == 64

    kt = [canonical(kappa(f, a, b, p), p) for a, b in tors]
    mons2 = monomials(2)
    S = np.array([eval_row(mons2, x, p) for x in kt], dtype=np.int64).T  # 36 x 64
    rank, piv, A = rref_mod(S.tolist(), p)
    print("gram rank:", rank)
    rankT, pivT, AT = rref_mod(S.T.tolist(), p)
    kv = kernel_vectors(rankT, pivT, AT, p)
    print("left kernel dim:", len(kv))
    r1 = r1_vector(f, mons2, p)
    v = kv[0]
    i0 = next(i for i, e in enumerate(r1) if e)
    c = v[i0] * pow(r1[i0], p - 2, p) % p
    print("left kernel == R1 up to scale:", all(e * c % p == y for e, y in zip(r1, v)),
          " scale:", c)

    rng = random.Random(31)
    w1 = w1_points(f, p)
    samples = []
    while len(samples) < 12:
        P = w1[rng.randrange(len(w1))]
        Q = w1[rng.randrange(len(w1))]
        R = w1[rng.randrange(len(w1))]
        samples.append(cantor_add(fx, cantor_add(fx, P, Q, p), R, p))

    # two pinned torsion classes: a = (X-1)(X-2) and a = X(X-3)(X-5)
    pins = [
        ("(X-1)(X-2)", pmul([(-1) % p, 1], [(-2) % p, 1], p)),
        ("X(X-3)(X-5)", pmul(pmul([0, 1], [(-3) % p, 1], p), [(-5) % p, 1], p)),
    ]
    for label, aT in pins:
        T = (aT, [])
        M = translation_matrix(T, samples)
        print(f"W_T for a = {label}, row-major, first nonzero = 1:")
        for i in range(8):
            print("  ", M[i * 8:(i + 1) * 8])
        Mm = np.array(M, dtype=np.int64).reshape(8, 8)
        M2 = Mm @ Mm % p
        off = [(i, j) for i in range(8) for j in range(8) if i != j and M2[i, j]]
        diag = [int(M2[i, i]) for i in range(8)]
        print("  W_T^2 diag:", diag, " offdiag nonzero:", off)
        e8 = np.array([0] * 7 + [1], dtype=np.int64)
        img = Mm @ e8 % p
        kT = canonical(kappa(f, T[0], T[1], p), p)
        ok = all(int(img[i]) * kT[j] % p == int(img[j]) * kT[i] % p
                 for i in range(8) for j in range(8))
        print("  W_T e8 prop to kappa(T):", ok)


if __name__ == "__main__":
    main()

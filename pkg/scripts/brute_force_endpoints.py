"""Independent dense-matrix check of the r = pi/4 QCMI values.

Deliberately does not import qcmi_accel: kets are built with explicit
Kronecker products, region II is traced with a plain reshape, and entropies
come straight from numpy.linalg.eigvalsh. The printed numbers are the ones
frozen in tests/test_acceptance.py.

    python scripts/brute_force_endpoints.py [r]
"""

import sys

import numpy as np

K0 = np.array([1.0, 0.0])
K1 = np.array([0.0, 1.0])


def kron(*vs):
    out = np.array([1.0])
    for v in vs:
        out = np.kron(out, v)
    return out


def mapped(bit, accelerated, r):
    """Single-party ket; accelerated parties become a 4-dim (I, II) vector."""
    if not accelerated:
        return K1 if bit else K0
    if bit:
        return kron(K1, K0)
    return np.cos(r) * kron(K0, K0) + np.sin(r) * kron(K1, K1)


def w_after(accelerated, r):
    terms = ["001", "010", "100"]
    psi = sum(kron(*(mapped(int(b), p in accelerated, r) for p, b in zip("ABC", t))) for t in terms)
    return psi / np.sqrt(3)


def traced_three_party(psi, accelerated):
    # axes in order A [A_II] B [B_II] C [C_II]; sum out every region-II axis
    dims, ii_axes, ax = [], [], 0
    for p in "ABC":
        dims.append(2)
        ax += 1
        if p in accelerated:
            dims.append(2)
            ii_axes.append(ax)
            ax += 1
    t = psi.reshape(dims)
    keep = [i for i in range(len(dims)) if i not in ii_axes]
    t = np.transpose(t, keep + ii_axes).reshape(8, -1)
    return t @ t.conj().T


def entropy(rho):
    lam = np.linalg.eigvalsh(rho)
    lam = lam[lam > 1e-15]
    return float(-(lam * np.log2(lam)).sum())


def reduce(rho, keep):
    t = rho.reshape([2] * 6)
    drop = [i for i in range(3) if i not in keep]
    for i in sorted(drop, reverse=True):
        n = t.ndim // 2
        t = np.trace(t, axis1=i, axis2=i + n)
    d = 2 ** len(keep)
    return t.reshape(d, d)


def qcmi(rho):
    return entropy(reduce(rho, [0, 2])) + entropy(reduce(rho, [1, 2])) - entropy(rho) - entropy(reduce(rho, [2]))


def main():
    r = float(sys.argv[1]) if len(sys.argv) > 1 else np.pi / 4
    for name, parties in [("W_C", "C"), ("W_B", "B"), ("W_BC", "BC"), ("W_AB", "AB")]:
        rho = traced_three_party(w_after(parties, r), parties)
        print(f"{name:5s} r={r:.12g}  QCMI={qcmi(rho):.12f}")


if __name__ == "__main__":
    main()

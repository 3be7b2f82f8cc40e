"""Independent reference values for the unit tests (numpy/scipy only).

Run: python3 tests/oracle/oracle.py
The printed numbers are frozen in tests/oracle_values.hpp.
"""
import itertools

import numpy as np
from scipy.linalg import logm, sqrtm
from scipy.optimize import minimize

LN2 = np.log(2)


def ket(*bits, d=2):
    v = np.zeros(d ** len(bits), complex)
    v[int("".join(map(str, bits)), d)] = 1
    return v


def proj(v):
    return np.outer(v, v.conj())


def ptrans(m, dims, sys):
    n = len(dims)
    t = m.reshape(dims + dims)
    axes = list(range(2 * n))
    for s in sys:
        axes[s], axes[n + s] = axes[n + s], axes[s]
    return t.transpose(axes).reshape(m.shape)


def ptrace(m, dims, keep):
    n = len(dims)
    t = m.reshape(dims + dims)
    letters = "abcdefgh"
    rows = [letters[i] for i in range(n)]
    cols = [letters[i].upper() if i in keep else letters[i] for i in range(n)]
    out = "".join(rows[i] for i in keep) + "".join(cols[i] for i in keep)
    k = int(np.prod([dims[i] for i in keep]))
    return np.einsum("".join(rows) + "".join(cols) + "->" + out, t).reshape(k, k)


def entropy(m):
    w = np.linalg.eigvalsh(m)
    w = w[w > 1e-14]
    return float(-(w * np.log2(w)).sum())


def h(p):
    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def concurrence(r):
    yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    rt = yy @ r.conj() @ yy
    lam = np.sqrt(np.abs(np.sort(np.linalg.eigvals(r @ rt).real)[::-1]))
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def eof(r):
    c = concurrence(r)
    return h((1 + np.sqrt(1 - c * c)) / 2) if c > 0 else 0.0


def qubit_basis(t, p):
    a = np.array([np.cos(t / 2), np.exp(1j * p) * np.sin(t / 2)])
    b = np.array([-np.exp(-1j * p) * np.sin(t / 2), np.cos(t / 2)])
    return np.stack([a, b], axis=1)


def dephase(m, dims, sys, u):
    out = np.zeros_like(m)
    for i in range(dims[sys]):
        ops = [np.eye(d) for d in dims]
        ops[sys] = proj(u[:, i])
        p = ops[0]
        for o in ops[1:]:
            p = np.kron(p, o)
        out += p @ m @ p
    return out


def min_over_qubit_bases(f):
    best = np.inf
    for t0 in np.linspace(0.1, np.pi - 0.1, 5):
        for p0 in np.linspace(0, 2 * np.pi, 5, endpoint=False):
            r = minimize(lambda x: f(qubit_basis(*x)), [t0, p0], method="Nelder-Mead",
                         options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 4000})
            best = min(best, r.fun)
    for t in np.linspace(0, np.pi, 181):
        for p in np.linspace(0, 2 * np.pi, 73):
            best = min(best, f(qubit_basis(t, p)))
    return best


def trace_norm(m):
    return float(np.abs(np.linalg.eigvalsh((m + m.conj().T) / 2)).sum())


def main():
    phi = (ket(0, 0) + ket(1, 1)) / np.sqrt(2)
    PHI = proj(phi)
    print("tensor |0><0|x|1><1| diag:", np.diag(np.kron(proj(ket(0)), proj(ket(1)))).real)
    print("T_A(phi+) spectrum:", np.round(np.linalg.eigvalsh(ptrans(PHI, [2, 2], [0])), 15))
    print("trace norm T_A(phi+):", trace_norm(ptrans(PHI, [2, 2], [0])))
    print("sigma_x spectrum:", np.linalg.eigvalsh(np.array([[0, 1], [1, 0]])))
    r0 = proj(ket(0))
    print("F(|0>,I/2):", np.real(np.trace(sqrtm(sqrtm(r0) @ (np.eye(2) / 2) @ sqrtm(r0)))) ** 2)

    ghz = (ket(0, 0, 0) + ket(1, 1, 1)) / np.sqrt(2)
    eta = proj(ghz) / 3
    for b in [(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)]:
        eta += proj(ket(*b)) / 6
    print("eta <000|eta|111>:", eta[0, 7].real)
    for name, sys in [("A", [0]), ("B", [1]), ("C", [2])]:
        ev = np.linalg.eigvalsh(ptrans(eta, [2, 2, 2], sys))
        print(f"eta T_{name} min eig: {ev.min():.17g}  E_n: {np.log2(trace_norm(ptrans(eta, [2, 2, 2], sys))):.17g}")

    rng = np.random.default_rng(1)
    pur = []
    for _ in range(200000):
        g = rng.normal(size=4) + 1j * rng.normal(size=4)
        g /= np.linalg.norm(g)
        m = g.reshape(2, 2)
        r = m @ m.conj().T
        pur.append(np.real(np.trace(r @ r)))
    print("mean purity induced N=2 K=2:", np.mean(pur))

    print("S(diag(3/4,1/4)):", entropy(np.diag([0.75, 0.25])))
    # S(rho||sigma) = -S(rho) - Tr rho log sigma; S(|0><0|) = 0.
    print("S(|0> || I/2):", -float(np.real(np.trace(r0 @ logm(np.eye(2) / 2)))) / LN2)
    cc = (proj(ket(0, 0)) + proj(ket(1, 1))) / 2
    print("I(classical bit):", entropy(ptrace(cc, [2, 2], [0])) + entropy(ptrace(cc, [2, 2], [1])) - entropy(cc))
    phi3 = sum(ket(i, i, d=3) for i in range(3)) / np.sqrt(3)
    print("E_n(phi_3+):", np.log2(trace_norm(ptrans(proj(phi3), [3, 3], [0]))), "log2 3:", np.log2(3))
    print("h(0.9):", h(0.9))

    werner = 0.9 * PHI + 0.1 * np.eye(4) / 4
    print("Werner p=0.9 concurrence:", concurrence(werner), " E_f:", eof(werner))
    print("Werner p=0.9 E_r closed form 1-h(F):", 1 - h((1 + 3 * 0.9) / 4))

    # Discord-type quantities by direct minimization over qubit bases.
    def d_r(rho, dims, sys):
        s = entropy(rho)
        return min_over_qubit_bases(lambda u: entropy(dephase(rho, dims, sys, u)) - s)

    print("D_r(phi+) on A:", d_r(PHI, [2, 2], 0))
    print("D_r^{C|AB}(eta):", d_r(eta, [2, 2, 2], 2))
    print("geometric discord(phi+):",
          min_over_qubit_bases(lambda u: np.linalg.norm(PHI - dephase(PHI, [2, 2], 0, u)) ** 2))

    def mi(r):
        return entropy(ptrace(r, [2, 2], [0])) + entropy(ptrace(r, [2, 2], [1])) - entropy(r)

    print("delta(phi+):", mi(PHI) - (-min_over_qubit_bases(lambda u: -mi(dephase(PHI, [2, 2], 0, u)))))
    print("J(phi+):", -min_over_qubit_bases(lambda u: -mi(dephase(PHI, [2, 2], 0, u))))
    print("J(cc bit):", -min_over_qubit_bases(lambda u: -mi(dephase(cc, [2, 2], 0, u))))
    print("invariance(phi+, computational):", trace_norm(PHI - dephase(PHI, [2, 2], 0, np.eye(2))) / 2)
    plus = (ket(0) + ket(1)) / np.sqrt(2)
    mix = (proj(ket(0, 0)) + proj(np.kron(plus, plus))) / 2
    print("min invariance(|00>/|++>, A):",
          min_over_qubit_bases(lambda u: trace_norm(mix - dephase(mix, [2, 2], 0, u)) / 2))

    # Geometric entanglement of phi+: 1 - max product overlap.
    best = 0
    for t, p in itertools.product(np.linspace(0, np.pi, 91), np.linspace(0, 2 * np.pi, 91)):
        a = qubit_basis(t, p)[:, 0]
        best = max(best, float(np.abs(np.kron(a, a.conj()).conj() @ phi) ** 2))
    print("E_g(phi+):", 1 - best)


if __name__ == "__main__":
    main()

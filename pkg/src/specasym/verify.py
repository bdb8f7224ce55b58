"""Seeded property suites for every module.

``run_verification(seed, level)`` returns a deterministic report (no
timings inside) plus a separate timing table.  ``level="quick"`` runs a
reduced battery; ``level="full"`` runs every property at the documented
tolerances.
"""
from __future__ import annotations

import math
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.linalg

from . import __version__, symbols
from .battery import (
    POSITIVE_AXIS, T2_CUTS, T3_CUTS, dirac_plus_constant, dirac_twisted_t2, dirac_twisted_t4,
    laplacian_potential, nonselfadjoint_t2, nonselfadjoint_t3, projection_battery,
)
from .dirac import (
    CliffordData, clifford_generators, dirac_asymmetry, dirac_symbol, lichnerowicz_square, sphere_constant,
    untraced_a1, untraced_residue_density,
)
from .matrix_kernel import (
    CutPair, eigen_oracle, matrix_complex_power, sectorial_projection_matrix, zero_projection,
)
from .projection import projection_expansion
from .quadrature import Torus
from .residue import (
    eta_residue, local_gap_density, positivity_check, res_total, residue_density, zeta_gap,
)
from .resolvent import (
    ellipticity_certificate, parametrix, power_expansion, principal_values, resolvent_expansion,
)
from .symbols import (
    EvalContext, SymbolExpansion, compose, euler_defect, from_terms, identity_expansion, odd_class_check,
    sample_points,
)

LEVELS = ("quick", "full")
TWO_PI = 2.0 * math.pi


@dataclass
class PropertyResult:
    module: str
    property: str
    measured: float
    tol: float
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["status"] = "PASS" if self.passed else "FAIL"
        del out["passed"]
        return out


def _result(module, name, measured, tol, **detail) -> PropertyResult:
    measured = float(measured)
    return PropertyResult(module, name, measured, float(tol), bool(measured <= tol), detail)


# ---------------------------------------------------------------------------
# random inputs


def random_cuts(rng: np.random.Generator, min_aperture: float = 0.5) -> CutPair:
    theta = float(rng.uniform(0.0, TWO_PI))
    return CutPair(theta, theta + float(rng.uniform(min_aperture, TWO_PI - min_aperture)))


def random_spectrum(rng, dim, cuts=None, clearance=0.1, zero=False, rmin=0.5, rmax=3.0):
    """Eigenvalues pairwise and from the cut rays at least ``clearance`` apart."""
    out = [0j] if zero else []
    while len(out) < dim:
        z = complex(rng.uniform(rmin, rmax) * np.exp(1j * rng.uniform(0.0, TWO_PI)))
        if cuts is not None and float(cuts.ray_distance(z)) < clearance:
            continue
        if out and min(abs(z - w) for w in out) < clearance:
            continue
        out.append(z)
    return np.array(out)


def matrix_with_spectrum(rng, eigs, coupling=0.3) -> np.ndarray:
    """``Q T Q^H`` with ``T`` upper triangular (diagonal ``eigs``) and ``Q`` unitary."""
    d = eigs.size
    T = np.diag(eigs).astype(complex)
    upper = np.triu(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)), 1)
    T += coupling / math.sqrt(d) * upper
    Q, _ = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return Q @ T @ Q.conj().T


def random_hermitian(rng, eigs) -> np.ndarray:
    d = eigs.size
    Q, _ = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return Q @ np.diag(eigs.astype(complex)) @ Q.conj().T


def random_symbol(rng, torus: Torus, size: int, order: int, depth: int = 2, label: str = "") -> SymbolExpansion:
    """Trigonometric-coefficient symbol with monomial and ``|xi|``-power terms."""
    n = torus.n
    comps = []
    for j in range(depth + 1):
        deg = order - j
        terms = []
        for _ in range(2):
            mode = tuple(int(v) for v in rng.integers(-1, 2, size=n))
            beta = [0] * n
            for _ in range(int(rng.integers(0, 3))):
                beta[int(rng.integers(0, n))] += 1
            coef = (rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))) / size
            terms.append((mode, tuple(beta), float(deg - sum(beta)), coef))
        comps.append(terms)
    return from_terms(torus, (size, size), order, comps, label=label)


def _sector_oracle(A, cuts: CutPair) -> np.ndarray:
    """Sum of Schur/Sylvester projectors for eigenvalues inside the sector."""
    d = A.shape[0]
    out = np.zeros((d, d), dtype=complex)
    for mu, proj in eigen_oracle(A):
        if abs(mu) > 1e-8 and bool(cuts.contains(mu)):
            out += proj
    return out


def _kernel(M, tol) -> np.ndarray:
    """Orthonormal basis of the numerical kernel (absolute threshold)."""
    _, sv, vh = scipy.linalg.svd(M)
    return vh[sv <= tol].conj().T


def _max_diff(a: SymbolExpansion, b: SymbolExpansion, depth: int, x, xi) -> float:
    worst = 0.0
    for j in range(depth + 1):
        da = a.component(j).eval(x, xi)
        db = b.component(j).eval(x, xi)
        worst = max(worst, float(np.max(np.abs(da - db))))
    return worst


def _points(p: SymbolExpansion, seed: int, n_xi: int = 6):
    return sample_points(p.torus, n_xi, seed, p.max_frequency())


# ---------------------------------------------------------------------------
# matrix-spectral-kernel


def matrix_suite(rng, level):
    module = "matrix-spectral-kernel"
    count = 100 if level == "full" else 30
    err = idem = herm = rng_err = 0.0
    for i in range(count):
        dim = int(rng.integers(1, 9))
        cuts = random_cuts(rng)
        eigs = random_spectrum(rng, dim, cuts)
        normal = i % 4 == 0
        A = matrix_with_spectrum(rng, eigs, 0.0 if normal else 0.3)
        P = sectorial_projection_matrix(A, cuts)
        err = max(err, float(np.max(np.abs(P - _sector_oracle(A, cuts)))))
        idem = max(idem, float(np.max(np.abs(P @ P - P))))
        if normal:
            herm = max(herm, float(np.max(np.abs(P - P.conj().T))))
        # column space against root vectors of the enclosed eigenvalues
        inside = [mu for mu in eigs if cuts.contains(mu)]
        if inside:
            V = np.hstack([_kernel(A - mu * np.eye(dim), 1e-9 * max(1.0, np.abs(eigs).max())) for mu in inside])
            rank_ok = np.linalg.matrix_rank(P, tol=1e-8) == V.shape[1]
            rng_err = max(rng_err, float(np.max(np.abs(P @ V - V))) if rank_ok else math.inf)
        elif np.max(np.abs(P)) > 1e-9:
            rng_err = math.inf
    yield _result(module, "oracle equivalence (sector vs root-space sum)", err, 1e-10, matrices=count)
    yield _result(module, "idempotence", idem, 1e-10, matrices=count)
    yield _result(module, "normal case hermitian", herm, 1e-10)
    yield _result(module, "range equals enclosed root space", rng_err, 1e-9)

    # disjointness and decomposition, half the samples with a 0 eigenvalue
    dis = dec = 0.0
    for i in range(20 if level == "full" else 8):
        dim = int(rng.integers(2, 9))
        cuts = random_cuts(rng)
        A = matrix_with_spectrum(rng, random_spectrum(rng, dim, cuts, zero=i % 2 == 0))
        P1 = sectorial_projection_matrix(A, cuts)
        P2 = sectorial_projection_matrix(A, cuts.complement())
        dis = max(dis, float(np.max(np.abs(P1 @ P2))), float(np.max(np.abs(P2 @ P1))))
        dec = max(dec, float(np.max(np.abs(P1 + P2 - (np.eye(dim) - zero_projection(A))))))
    yield _result(module, "disjoint sectors", dis, 1e-10)
    yield _result(module, "complementary sectors sum to 1 - Pi_0", dec, 1e-10)

    # power gap along two cuts
    gap = 0.0
    dim = 6
    for _ in range(20):
        cuts = random_cuts(rng)
        A = matrix_with_spectrum(rng, random_spectrum(rng, dim, cuts))
        s = complex(rng.uniform(-2.0, -0.05), rng.uniform(-0.5, 0.5))
        As = matrix_complex_power(A, s, cuts.theta)
        Bs = matrix_complex_power(A, s, cuts.theta_prime)
        rhs = (1.0 - np.exp(2j * math.pi * s)) * sectorial_projection_matrix(A, cuts) @ As
        gap = max(gap, float(np.max(np.abs(As - Bs - rhs))))
    yield _result(module, "power difference across cuts", gap, 1e-9, samples=20)

    # selfadjoint decomposition of the up and down powers
    sa = 0.0
    pos, neg = POSITIVE_AXIS, CutPair.up_down()
    for i in range(10):
        eigs = random_spectrum(rng, 6, CutPair(0.5 * math.pi, 2.5 * math.pi), rmin=0.5, rmax=3.0)
        eigs = np.where(np.arange(6) % 2 == 0, 1.0, -1.0) * np.abs(eigs)
        A = random_hermitian(rng, eigs)
        s = complex(rng.uniform(-2.0, -0.05), rng.uniform(-0.5, 0.5)) if i else -0.3 + 0j
        Pp, Pm = sectorial_projection_matrix(A, pos), sectorial_projection_matrix(A, neg)
        absA = (Pp - Pm) @ A
        absS = matrix_complex_power(absA, s, math.pi)
        up = Pp @ absS + np.exp(-1j * math.pi * s) * Pm @ absS
        down = Pp @ absS + np.exp(1j * math.pi * s) * Pm @ absS
        sa = max(sa, float(np.max(np.abs(matrix_complex_power(A, s, 0.5 * math.pi) - up))),
                 float(np.max(np.abs(matrix_complex_power(A, s, 1.5 * math.pi) - down))))
    yield _result(module, "selfadjoint up/down decomposition", sa, 1e-9, samples=10)

    # group law and partial inverse
    grp = pinv = 0.0
    for _ in range(5):
        cuts = random_cuts(rng)
        A = matrix_with_spectrum(rng, random_spectrum(rng, 5, cuts, zero=True))
        s1 = complex(rng.uniform(-1.5, -0.1), rng.uniform(-0.3, 0.3))
        s2 = complex(rng.uniform(-1.5, -0.1), rng.uniform(-0.3, 0.3))
        th = cuts.theta
        lhs = matrix_complex_power(A, s1 + s2, th)
        grp = max(grp, float(np.max(np.abs(lhs - matrix_complex_power(A, s1, th) @ matrix_complex_power(A, s2, th)))))
        inv = matrix_complex_power(A, -1.0, th)
        pinv = max(pinv, float(np.max(np.abs(A @ inv - (np.eye(5) - zero_projection(A))))))
    yield _result(module, "power group law", grp, 1e-9)
    yield _result(module, "negative integer power is the partial inverse", pinv, 1e-9)


# ---------------------------------------------------------------------------
# symbol-core


def _raw_eval(comp, xi, lam_key=None, lam=None) -> dict:
    ctx = EvalContext(xi, comp.torus.omega, None if lam_key is None else {lam_key: lam})
    return ctx.evaluate(comp.node, 0)


def _raw_homogeneity(comp, xi, t, lam_key=None, lam=None, weight=0) -> float:
    """Scale covectors (and ``lam``) before graph evaluation, not after."""
    base = _raw_eval(comp, xi, lam_key, lam)
    big = _raw_eval(comp, t * xi, lam_key, None if lam is None else t**weight * lam)
    worst = 0.0
    for k, v in base.items():
        w = big.get(k)
        ref = t**comp.degree * v[0]
        diff = ref if w is None else w[0] - ref
        worst = max(worst, float(np.max(np.abs(diff)) / max(1.0, float(np.max(np.abs(ref))))))
    return worst


def leibniz_reference(a: SymbolExpansion, b: SymbolExpansion, x, xi) -> np.ndarray:
    """Degree ``m + m' - 1`` term of ``a # b`` written out by hand."""
    am, bm = a.component(0), b.component(0)
    out = am.eval(x, xi) @ b.component(1).eval(x, xi) + a.component(1).eval(x, xi) @ bm.eval(x, xi)
    for i in range(a.n):
        e = [0] * a.n
        e[i] = 1
        out = out + (-1j) * am.derive(alpha_xi=e).eval(x, xi) @ bm.derive(alpha_x=e).eval(x, xi)
    return out


def symbol_suite(rng, level):
    module = "symbol-core"
    torus = Torus.standard(2)
    trials = 4 if level == "full" else 2
    hom = eul = assoc = leib = 0.0
    for t in range(trials):
        a = random_symbol(rng, torus, 2, 1, label="a")
        b = random_symbol(rng, torus, 2, 2, label="b")
        c = random_symbol(rng, torus, 2, 0, label="c")
        x, xi = sample_points(torus, 6, int(rng.integers(1 << 30)), 3)
        for comp in a.components + b.components:
            hom = max(hom, _raw_homogeneity(comp, xi, 2.0))
            eul = max(eul, euler_defect(comp, x, xi))
        depth = 3
        left = compose(compose(a, b, depth), c, depth)
        right = compose(a, compose(b, c, depth), depth)
        assoc = max(assoc, _max_diff(left, right, depth, x, xi))
        ab = compose(a, b, 1)
        leib = max(leib, float(np.max(np.abs(ab.component(1).eval(x, xi) - leibniz_reference(a, b, x, xi)))))
    yield _result(module, "homogeneity", hom, 1e-13)
    yield _result(module, "Euler identity", eul, 1e-11)
    yield _result(module, "composition associativity", assoc, 1e-9, depth=3)
    yield _result(module, "Leibniz consistency", leib, 1e-10)


# ---------------------------------------------------------------------------
# resolvent-parametrix


def _symbol_battery():
    return [
        laplacian_potential(2),
        dirac_symbol(dirac_twisted_t2(), "D_A/T2"),
        nonselfadjoint_t2(),
        nonselfadjoint_t3(),
        dirac_plus_constant(),
    ]


def _far_lambda(p: SymbolExpansion) -> complex:
    """A modulus-1.3 parameter whose argument is far from the principal spectrum."""
    from .projection import scan_principal_spectrum

    args = np.angle(scan_principal_spectrum(p)).ravel()
    cand = np.linspace(0.0, TWO_PI, 73)[:-1]
    dist = [float(np.min(np.abs(np.angle(np.exp(1j * (args - c)))))) for c in cand]
    return complex(1.3 * np.exp(1j * cand[int(np.argmax(dist))]))


def resolvent_suite(rng, level):
    module = "resolvent-parametrix"
    depth = 3 if level == "full" else 2
    par = hom = parity = 0.0
    closure = True
    ell = math.inf
    for p in _symbol_battery():
        seed = int(rng.integers(1 << 30))
        x, xi = _points(p, seed)
        ell = min(ell, ellipticity_certificate(p).min_singular_value)
        ident = identity_expansion(p.torus, p.shape[0])
        b = parametrix(p, depth)
        par = max(par, _max_diff(compose(p, b, depth), ident, depth, x, xi),
                  _max_diff(compose(b, p, depth), ident, depth, x, xi))
        p2 = power_expansion(p, 2, depth)
        par = max(par, _max_diff(compose(p2, compose(p, p, depth), depth), ident, depth, x, xi))
        res = resolvent_expansion(p, depth)
        lam = _far_lambda(p)
        odd = odd_class_check(p).ok
        for j, q in enumerate(res.components):
            hom = max(hom, _raw_homogeneity(q, xi, 2.0, res.lam.key, np.full((xi.shape[0], 1), lam), p.order))
            if odd:
                plus = q.eval(x, xi, lam)
                minus = q.eval(x, -xi, (-1) ** p.order * lam)
                parity = max(parity, float(np.max(np.abs(minus - (-1.0) ** (p.order + j) * plus))))
        if odd:
            for k in (1, 2, -1):
                closure = closure and odd_class_check(power_expansion(p, k, depth)).ok
    yield _result(module, "parametrix residual", par, 1e-9, depth=depth)
    yield _result(module, "parameter homogeneity", hom, 1e-10)
    yield _result(module, "resolvent parity on odd-class operators", parity, 1e-9)
    yield _result(module, "odd-class closure under powers", 0.0 if closure else 1.0, 0.0)
    yield _result(module, "ellipticity certificate", 1e-6 / ell if ell > 0 else math.inf, 1.0,
                  min_singular=float(ell))


# ---------------------------------------------------------------------------
# sectorial-projection


def projection_suite(rng, level):
    module = "sectorial-projection"
    depth = 3 if level == "full" else 2
    idem = law = comp = split = 0.0
    for p, cuts in projection_battery():
        seed = int(rng.integers(1 << 30))
        x, xi = _points(p, seed, 5)
        pi = projection_expansion(p, cuts, depth)
        idem = max(idem, _max_diff(compose(pi, pi, depth), pi, depth, x, xi))
        pm = principal_values(p, xi)
        fiber = np.stack([sectorial_projection_matrix(m, cuts) for m in pm])
        law = max(law, float(np.max(np.abs(pi.component(0).eval(x, xi) - fiber[None]))))
        other = projection_expansion(p, cuts.complement(), depth)
        comp = max(comp, _max_diff(pi.combine(other), identity_expansion(p.torus, p.shape[0]), depth, x, xi))
        from .residue import fast_path_applies

        if fast_path_applies(p, cuts):
            eye = np.eye(p.shape[0])
            for j in range(depth + 1):
                c = pi.component(j)
                want = (eye if j == 0 else 0.0) + (-1.0) ** (j + 1) * c.eval(x, xi)
                split = max(split, float(np.max(np.abs(c.eval(x, -xi) - want))))
    yield _result(module, "symbol idempotence", idem, 1e-6, depth=depth)
    yield _result(module, "principal symbol is the fiberwise projection", law, 1e-8)
    yield _result(module, "complementary sectors sum to identity", comp, 1e-8, depth=depth)
    yield _result(module, "split-sector parity", split, 1e-8)


# ---------------------------------------------------------------------------
# residue-asymmetry


def residue_suite(rng, level):
    module = "residue-asymmetry"
    full = level == "full"
    lap = laplacian_potential(2)
    yield _result(module, "Res (lap+V)^-1 on T2 equals 2 pi", abs(res_total(power_expansion(lap, 1, 0)) - TWO_PI),
                  1e-10)

    # cut independence on T3
    p3 = nonselfadjoint_t3()
    ks = range(-2, 3) if full else (0, 1, 2)
    cut_list = T3_CUTS if full else T3_CUTS[:1]
    res3 = None if full else 6
    worst = 0.0
    for cuts in cut_list:
        for k in ks:
            worst = max(worst, abs(zeta_gap(p3, cuts, k, resolution=res3, nodes=128 if full else 64).gap))
    yield _result(module, "cut independence on T3", worst, 1e-7, ks=list(ks), cuts=len(cut_list))

    # local identity and the shortcut on T2
    viol = fast = 0.0
    ops2 = [dirac_symbol(dirac_twisted_t2(), "D_A/T2"), nonselfadjoint_t2()]
    for p in ops2 if full else ops2[:1]:
        for k in (-1, 0, 1, 2):
            viol = max(viol, local_gap_density(p, T2_CUTS[0], k).violation)
            rep = zeta_gap(p, T2_CUTS[0], k)
            fast = max(fast, rep.discrepancy)
    yield _result(module, "local density identity on T2", viol, 1e-7)
    yield _result(module, "gap equals i pi Res P^-k / m", fast, 1e-7)

    # residue of projections
    worst = 0.0
    for p, cuts in projection_battery():
        worst = max(worst, abs(res_total(projection_expansion(p, cuts, p.n))))
    yield _result(module, "projection residue vanishes", worst, 1e-7)

    # eta residues on the opposite-parity battery
    imag = val = 0.0
    cases = [(dirac_symbol(dirac_twisted_t2(), "D_A/T2"), range(-2, 3))]
    if full:
        cases.append((laplacian_potential(3), range(-2, 4)))
    for p, krange in cases:
        for k in krange:
            rep = eta_residue(p, k)
            imag = max(imag, rep.imag_residual)
            val = max(val, abs(rep.value), abs(rep.rearranged))
    yield _result(module, "eta residue imaginary part", imag, 1e-10)
    yield _result(module, "eta residue vanishes on opposite-parity battery", val, 1e-7)

    # counterexample: odd-class but not regular at s = 1
    c = 0.3
    rep = eta_residue(dirac_plus_constant(c), 1)
    yield _result(module, "eta residue of D + c at 1 equals -4 pi c", abs(rep.value - (-4.0 * math.pi * c)), 1e-8)

    free = dirac_symbol(CliffordData(Torus.standard(2), 1, [{}, {}]), "D/T2")
    pos = positivity_check(free)
    rel = abs(pos.value - 4.0 * math.pi**2) / (4.0 * math.pi**2)
    yield _result(module, "positivity value 4 pi^2", rel, 1e-6, value=pos.value)
    yield _result(module, "positivity strictly above floor", 0.0 if pos.positive else 1.0, 0.0)


# ---------------------------------------------------------------------------
# dirac-geometry


def dirac_suite(rng, level):
    module = "dirac-geometry"
    full = level == "full"
    cliff = 0.0
    for n in (2, 4):
        g, chi = clifford_generators(n)
        eye = np.eye(g[0].shape[0])
        for i in range(n):
            for j in range(n):
                cliff = max(cliff, float(np.max(np.abs(g[i] @ g[j] + g[j] @ g[i] - 2.0 * (i == j) * eye))))
            cliff = max(cliff, float(np.max(np.abs(chi @ g[i] + g[i] @ chi))))
        cliff = max(cliff, float(np.max(np.abs(chi @ chi - eye))))
    yield _result(module, "Clifford relations", cliff, 0.0)

    d2, d4 = dirac_twisted_t2(), dirac_twisted_t4()
    lich = max(lichnerowicz_square(d2).residual, lichnerowicz_square(d4).residual)
    yield _result(module, "Lichnerowicz identity", lich, 1e-10)

    a, b = sphere_constant(2)
    c, d = sphere_constant(4)
    yield _result(module, "sphere constant", max(abs(a - b), abs(c - d)), 1e-12)

    pairs = [(d2, 2), (d4, 4), (d4, 2)] if full else [(d2, 2)]
    route = closed = 0.0
    for data, k in pairs:
        rep = dirac_asymmetry(data, k)
        route = max(route, rep.discrepancy / max(abs(rep.heat_route), 1.0))
        if rep.closed_form is not None:
            closed = max(closed, abs(rep.residue_route - rep.closed_form) / abs(rep.closed_form))
    yield _result(module, "residue and heat routes agree", route, 1e-6)
    yield _result(module, "gap at k = n matches closed form", closed, 1e-6)

    chir = 0.0
    D2 = dirac_symbol(d2)
    chir = max(chir, residue_density(power_expansion(D2, 1, 1)).max_abs())
    if full:
        D4 = dirac_symbol(d4)
        for k in (1, 3):
            chir = max(chir, residue_density(power_expansion(D4, k, 4 - k)).max_abs())
    yield _result(module, "odd powers have vanishing traced density", chir, 1e-9)

    if full:
        D4 = dirac_symbol(d4)
        x = sample_points(d4.torus, 1, 0, 2)[0][:4]
        M = untraced_residue_density(power_expansion(D4, 2, 2), x)
        defect = float(np.max(np.abs(M - 2.0 * untraced_a1(d4, x))))
        yield _result(module, "untraced density of D^-2 equals 2 a_1", defect, 1e-6)


SUITES = (
    ("matrix-spectral-kernel", matrix_suite),
    ("symbol-core", symbol_suite),
    ("resolvent-parametrix", resolvent_suite),
    ("sectorial-projection", projection_suite),
    ("residue-asymmetry", residue_suite),
    ("dirac-geometry", dirac_suite),
)


@contextmanager
def composition_phase(phase: complex):
    """Temporarily replace the composition phase (mutation fixture)."""
    old = symbols.COMPOSE_PHASE
    symbols.COMPOSE_PHASE = phase
    try:
        yield
    finally:
        symbols.COMPOSE_PHASE = old


def run_verification(seed: int = 42, level: str = "quick", modules=None, mutate: bool = False):
    """Run the suites; returns ``(report, timings)``.

    Each suite draws from its own generator seeded by ``(seed, index)``, so
    selecting a subset of modules does not change the others' inputs.
    """
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    results, timings = [], {}
    with composition_phase(1j if mutate else -1j):
        for index, (name, suite) in enumerate(SUITES):
            if modules is not None and name not in modules:
                continue
            rng = np.random.default_rng([seed, index])
            start = time.perf_counter()
            results.extend(r.to_dict() for r in suite(rng, level))
            timings[name] = time.perf_counter() - start
    failed = [r for r in results if r["status"] == "FAIL"]
    report = {
        "engine": {"name": "specasym", "version": __version__},
        "seed": seed,
        "level": level,
        "mutated": mutate,
        "summary": {"total": len(results), "passed": len(results) - len(failed), "failed": len(failed)},
        "results": results,
    }
    return report, timings

"""Classical matrix-valued symbols on flat tori.

A homogeneous component is a finite Fourier sum in ``x`` whose
coefficients are matrix functions of ``xi``::

    a(x, xi) = sum_k exp(i omega k.x) A_k(xi)

The ``A_k`` are expression graphs (:class:`Node`).  Graphs are evaluated
at a batch of unit covectors as truncated Taylor jets in ``xi``, so
``xi``-derivatives are exact and ``x``-derivatives are exact multipliers
on the Fourier data.  Resolvent parameters ``lambda`` enter through
:class:`Lambda` leaves and are integrated out by :class:`Contour` nodes.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import jets
from .errors import DepthUnavailable, OrderExceeded, SingularFiber
from .matrix_kernel import kahan_sum
from .quadrature import Torus

MAX_XI_ORDER = 16
SING_TOL = 1e-10
PARITY_TOL = 1e-10
DERIV_TOL = 1e-10

# phase of the composition series; the verification suite flips it to
# check that the Leibniz property notices
COMPOSE_PHASE = -1j

Mode = tuple


def _zero_mode(n: int) -> Mode:
    return (0,) * n


def multi_indices(n: int, total: int):
    """All multi-indices of length ``n`` and total order ``total``."""
    for a in itertools.product(range(total + 1), repeat=n):
        if sum(a) == total:
            yield a


def _factorial(alpha) -> int:
    return math.prod(math.factorial(a) for a in alpha)


# ---------------------------------------------------------------------------
# expression graph


class Node:
    """Base class of the immutable expression graph.

    ``degree`` is the homogeneity degree in ``xi`` (``lambda`` counted with
    weight equal to the operator order), ``modes`` the static set of
    Fourier frequencies that may be nonzero, ``lams`` the resolvent
    parameters the node depends on.
    """

    children: tuple = ()

    def __init__(self, n, shape, degree, modes, lams=frozenset()):
        self.n = n
        self.shape = tuple(shape)
        self.degree = degree
        self.modes = frozenset(modes)
        self.lams = frozenset(lams)

    def shifts(self):
        return (0,) * len(self.children)

    def compute(self, ctx, order, values):  # pragma: no cover - interface
        raise NotImplementedError

    @property
    def is_zero(self) -> bool:
        return not self.modes


class Zero(Node):
    def __init__(self, n, shape, degree=0):
        super().__init__(n, shape, degree, ())

    def compute(self, ctx, order, values):
        return {}


class Terms(Node):
    """Sum of ``exp(i omega k.x) xi**beta |xi|**s C`` terms of one degree."""

    def __init__(self, n, shape, terms):
        terms = [(tuple(int(v) for v in k), tuple(int(v) for v in b), float(s), np.asarray(c, dtype=complex))
                 for k, b, s, c in terms]
        degrees = {sum(b) + s for _, b, s, _ in terms}
        if len(degrees) > 1:
            raise ValueError(f"terms mix homogeneity degrees {sorted(degrees)}")
        degree = degrees.pop() if degrees else 0
        if degree == int(degree):
            degree = int(degree)
        for _, b, _, c in terms:
            if c.shape != tuple(shape):
                raise ValueError(f"coefficient shape {c.shape} != {tuple(shape)}")
            if len(b) != n:
                raise ValueError("xi exponent length does not match dimension")
        terms = [t for t in terms if np.any(t[3] != 0)]
        super().__init__(n, shape, degree, {t[0] for t in terms})
        self.terms = terms

    def compute(self, ctx, order, values):
        out = {}
        for k, b, s, c in self.terms:
            scal = ctx.scalar_jet(b, s, order)
            arr = scal[:, :, None, None, None] * c
            if k in out:
                out[k] = out[k] + arr
            else:
                out[k] = arr
        return out


class Lambda(Node):
    """The resolvent parameter, ``lambda * I``; values supplied by the context."""

    def __init__(self, n, size, weight, key=None):
        super().__init__(n, (size, size), weight, {_zero_mode(n)})
        self.key = key if key is not None else object()
        self.lams = frozenset({self.key})

    def compute(self, ctx, order, values):
        lam = ctx.lam_values(self.key)
        idx = jets.jet_index(self.n, order)
        arr = np.zeros((idx.size,) + lam.shape + self.shape, dtype=complex)
        arr[0] = lam[..., None, None] * np.eye(self.shape[0])
        return {_zero_mode(self.n): arr}


class Add(Node):
    def __init__(self, children, coefs):
        children = tuple(children)
        c0 = children[0]
        super().__init__(
            c0.n, c0.shape, c0.degree,
            frozenset().union(*(c.modes for c in children)),
            frozenset().union(*(c.lams for c in children)),
        )
        self.children = children
        self.coefs = tuple(complex(c) for c in coefs)

    def compute(self, ctx, order, values):
        out = {}
        for coef, val in zip(self.coefs, values):
            for k, arr in val.items():
                term = arr if coef == 1 else coef * arr
                out[k] = out[k] + term if k in out else term
        return out


class Mul(Node):
    def __init__(self, a, b):
        modes = {tuple(x + y for x, y in zip(ka, kb)) for ka in a.modes for kb in b.modes}
        super().__init__(a.n, (a.shape[0], b.shape[1]), a.degree + b.degree, modes, a.lams | b.lams)
        self.children = (a, b)

    def compute(self, ctx, order, values):
        va, vb = values
        out = {}
        for ka, xa in va.items():
            for kb, xb in vb.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                prod = jets.jet_mul(xa, xb, self.n, order)
                out[k] = out[k] + prod if k in out else prod
        return out


class XiDerivative(Node):
    def __init__(self, a, beta):
        super().__init__(a.n, a.shape, a.degree - sum(beta), a.modes, a.lams)
        self.children = (a,)
        self.beta = tuple(beta)

    def shifts(self):
        return (sum(self.beta),)

    def compute(self, ctx, order, values):
        (va,) = values
        src_order = order + sum(self.beta)
        return {k: jets.jet_derivative(arr, self.n, src_order, self.beta) for k, arr in va.items()}


class XDerivative(Node):
    """``d_x^alpha`` acting on Fourier data: mode ``k`` picks up ``prod (i omega_j k_j)**alpha_j``."""

    def __init__(self, a, alpha):
        modes = a.modes if not any(alpha) else {k for k in a.modes if all(kj != 0 for kj, aj in zip(k, alpha) if aj)}
        super().__init__(a.n, a.shape, a.degree, modes, a.lams)
        self.children = (a,)
        self.alpha = tuple(alpha)

    def compute(self, ctx, order, values):
        (va,) = values
        out = {}
        for k, arr in va.items():
            if k not in self.modes:
                continue
            f = complex(np.prod((1j * ctx.omega * np.asarray(k)) ** np.asarray(self.alpha)))
            out[k] = f * arr
        return out


class Inverse(Node):
    """Pointwise matrix inverse of an ``x``-independent node."""

    def __init__(self, a):
        if a.modes - {_zero_mode(a.n)}:
            raise NotImplementedError("matrix inverse needs an x-independent argument")
        if a.shape[0] != a.shape[1]:
            raise ValueError("inverse of a non-square node")
        super().__init__(a.n, a.shape, -a.degree, {_zero_mode(a.n)}, a.lams)
        self.children = (a,)

    def compute(self, ctx, order, values):
        (va,) = values
        arr = va[_zero_mode(self.n)]
        sv = np.linalg.svd(arr[0], compute_uv=False)
        smin = float(np.min(sv[..., -1]))
        if smin <= ctx.sing_tol:
            raise SingularFiber(f"inverse node certificate failed: min singular value {smin:.3g}")
        return {_zero_mode(self.n): jets.jet_inv(arr, self.n, order)}


class Contour(Node):
    """``factor * oint g(lambda) dlambda`` over per-fiber contours.

    The contour at each base covector is built by ``rule(principal values)``
    which returns ``(nodes, weights)`` arrays of shape ``(B, L)``; it is held
    fixed while the integrand's ``xi``-jets are formed.
    """

    def __init__(self, child, lam: Lambda, principal: Node, rule, factor):
        super().__init__(child.n, child.shape, child.degree + lam.degree, child.modes, child.lams - lam.lams)
        self.children = (child,)
        self.lam = lam
        self.principal = principal
        self.rule = rule
        self.factor = complex(factor)

    def prepare(self, ctx):
        if self.lam.key in ctx.lam:
            return
        pm = ctx.evaluate(self.principal, 0)
        mats = pm[_zero_mode(self.n)][0, :, 0] if pm else np.zeros((ctx.batch,) + self.principal.shape)
        nodes, weights = self.rule(mats)
        ctx.lam[self.lam.key] = nodes
        ctx.lam_weights[self.lam.key] = weights

    def compute(self, ctx, order, values):
        (va,) = values
        w = ctx.lam_weights[self.lam.key]
        out = {}
        for k, arr in va.items():
            terms = w[None, :, :, None, None] * arr
            out[k] = (self.factor * kahan_sum(terms, axis=2))[:, :, None]
        return out


def zero_like(n, shape, degree=0) -> Zero:
    return Zero(n, shape, degree)


def add(*nodes, coefs=None) -> Node:
    coefs = [1.0] * len(nodes) if coefs is None else list(coefs)
    pairs = [(c, nd) for c, nd in zip(coefs, nodes) if nd is not None and not nd.is_zero and c != 0]
    if not pairs:
        ref = next(nd for nd in nodes if nd is not None)
        return Zero(ref.n, ref.shape, ref.degree)
    if len(pairs) == 1 and pairs[0][0] == 1:
        return pairs[0][1]
    return Add([p[1] for p in pairs], [p[0] for p in pairs])


def scale(node: Node, c) -> Node:
    return add(node, coefs=[c])


def mul(a: Node, b: Node) -> Node:
    if a.is_zero or b.is_zero:
        return Zero(a.n, (a.shape[0], b.shape[1]), a.degree + b.degree)
    return Mul(a, b)


def xi_derivative(a: Node, beta) -> Node:
    beta = tuple(int(v) for v in beta)
    if not any(beta):
        return a
    if a.is_zero:
        return Zero(a.n, a.shape, a.degree - sum(beta))
    if isinstance(a, XiDerivative):
        return XiDerivative(a.children[0], tuple(x + y for x, y in zip(a.beta, beta)))
    return XiDerivative(a, beta)


def x_derivative(a: Node, alpha) -> Node:
    alpha = tuple(int(v) for v in alpha)
    if not any(alpha):
        return a
    node = XDerivative(a, alpha)
    if node.is_zero:
        return Zero(a.n, a.shape, a.degree)
    return node


# ---------------------------------------------------------------------------
# evaluation


class EvalContext:
    """Evaluates graphs at a batch of unit covectors ``xi`` (shape ``(B, n)``)."""

    def __init__(self, xi, omega, lam=None, sing_tol=SING_TOL):
        self.xi = np.atleast_2d(np.asarray(xi, dtype=float))
        self.n = self.xi.shape[1]
        self.batch = self.xi.shape[0]
        self.omega = np.asarray(omega, dtype=float)
        self.sing_tol = sing_tol
        self.lam = {} if lam is None else dict(lam)
        self.lam_weights = {}
        self._scalar = {}
        self._cache = {}

    def lam_values(self, key) -> np.ndarray:
        if key not in self.lam:
            raise KeyError("resolvent parameter has no value in this context")
        lam = np.asarray(self.lam[key], dtype=complex)
        if lam.ndim == 1:
            lam = lam[:, None]
        return np.broadcast_to(lam, (self.batch, lam.shape[1]))

    def scalar_jet(self, beta, s, order) -> np.ndarray:
        key = (beta, s)
        hit = self._scalar.get(key)
        if hit is not None and hit[0] >= order:
            return hit[1][: jets.jet_index(self.n, order).size]
        val = jets.monomial_jet(self.xi, beta, order).astype(complex)
        if s != 0:
            norm = self._norm_power(s, order)
            val = jets.jet_mul(val[..., None, None], norm[..., None, None], self.n, order)[..., 0, 0]
        self._scalar[key] = (order, val)
        return val

    def _norm_power(self, s, order):
        key = ("norm", s)
        hit = self._scalar.get(key)
        if hit is not None and hit[0] >= order:
            return hit[1][: jets.jet_index(self.n, order).size]
        val = jets.power_of_norm_jet(self.xi, s, order)
        self._scalar[key] = (order, val)
        return val

    def evaluate(self, root: Node, order: int) -> dict:
        """Jets of ``root`` to ``order`` as ``{mode: array (C, B, L, r, c)}``."""
        cached = self._cache.get(id(root))
        if cached is not None and cached[0] >= order:
            return _truncate(cached[1], self.n, order)
        topo = _topological(root)
        need = {id(root): order}
        for node in topo:
            base = need.get(id(node))
            if base is None:
                continue
            for child, sh in zip(node.children, node.shifts()):
                need[id(child)] = max(need.get(id(child), -1), base + sh)
        for node in topo:
            if need[id(node)] > MAX_XI_ORDER:
                raise OrderExceeded(f"xi-jet order {need[id(node)]} exceeds {MAX_XI_ORDER}")
        for node in topo:
            if isinstance(node, Contour):
                node.prepare(self)
        remaining = {}
        for node in topo:
            for child in node.children:
                remaining[id(child)] = remaining.get(id(child), 0) + 1
        values = {}
        for node in reversed(topo):
            key = id(node)
            cached = self._cache.get(key)
            if cached is not None and cached[0] >= need[key]:
                values[key] = (cached[0], cached[1])
                continue
            kids = []
            for child, sh in zip(node.children, node.shifts()):
                c_order, c_val = values[id(child)]
                kids.append(_truncate(c_val, self.n, need[key] + sh) if c_order > need[key] + sh else c_val)
            values[key] = (need[key], node.compute(self, need[key], kids))
            for child in node.children:
                remaining[id(child)] -= 1
                if remaining[id(child)] == 0 and id(child) != id(root):
                    values.pop(id(child), None)
        result = values[id(root)]
        self._cache[id(root)] = (result[0], result[1])
        self._keep = getattr(self, "_keep", [])
        self._keep.append(root)
        return _truncate(result[1], self.n, order)


def _truncate(val: dict, n: int, order: int) -> dict:
    size = jets.jet_index(n, order).size
    return {k: arr[:size] for k, arr in val.items()}


def _topological(root: Node) -> list:
    """Nodes reachable from ``root``, parents before children."""
    order, seen = [], set()
    stack = [(root, False)]
    while stack:
        node, done = stack.pop()
        if done:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for child in node.children:
            if id(child) not in seen:
                stack.append((child, False))
    order.reverse()
    return order


def fourier_sum(val: dict, torus: Torus, x) -> np.ndarray:
    """Combine mode arrays into values at torus points ``x`` (shape ``(P, n)``)."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    out = None
    for k, arr in sorted(val.items()):
        ph = torus.phase(x, k)
        term = ph.reshape(ph.shape + (1,) * arr.ndim) * arr[None]
        out = term if out is None else out + term
    return out


# ---------------------------------------------------------------------------
# components and expansions


@dataclass(frozen=True)
class HomogeneousComponent:
    """Positively homogeneous matrix function of ``(x, xi)`` on a torus.

    ``lam_weight`` is the operator order ``m`` when the component depends
    on a resolvent parameter: then ``a(x, t xi, t**m lam) = t**degree a(x, xi, lam)``.
    """

    node: Node
    torus: Torus
    lam: Lambda | None = None

    @property
    def degree(self):
        return self.node.degree

    @property
    def shape(self):
        return self.node.shape

    @property
    def n(self) -> int:
        return self.torus.n

    @property
    def is_zero(self) -> bool:
        return self.node.is_zero

    def eval(self, x, xi, lam=None) -> np.ndarray:
        """Value at torus point(s) ``x`` and covector(s) ``xi``.

        Evaluated at ``xi / |xi|`` and extended by homogeneity.  With a
        single ``x`` and ``xi`` returns one matrix; otherwise an array of
        shape ``(P, B, r, c)`` for ``P`` torus points and ``B`` covectors.
        """
        x_arr = np.atleast_2d(np.asarray(x, dtype=float))
        xi_arr = np.atleast_2d(np.asarray(xi, dtype=float))
        single = np.ndim(x) == 1 and np.ndim(xi) == 1
        t = np.linalg.norm(xi_arr, axis=1)
        if np.any(t == 0):
            raise ValueError("xi must be nonzero")
        unit = xi_arr / t[:, None]
        lam_map = None
        if self.node.lams:
            if lam is None or self.lam is None:
                raise ValueError("this component needs a value of lambda")
            weight = self.lam.degree
            lam_arr = np.broadcast_to(np.asarray(lam, dtype=complex), t.shape) / t**weight
            lam_map = {self.lam.key: lam_arr[:, None]}
        ctx = EvalContext(unit, self.torus.omega, lam_map)
        val = ctx.evaluate(self.node, 0)
        if not val:
            out = np.zeros((x_arr.shape[0], unit.shape[0]) + self.shape, dtype=complex)
        else:
            out = fourier_sum({k: v[0, :, 0] for k, v in val.items()}, self.torus, x_arr)
        out = out * (t**self.degree)[None, :, None, None]
        return out[0, 0] if single else out

    def derive(self, alpha_x=None, alpha_xi=None) -> "HomogeneousComponent":
        n = self.n
        alpha_x = (0,) * n if alpha_x is None else tuple(alpha_x)
        alpha_xi = (0,) * n if alpha_xi is None else tuple(alpha_xi)
        if sum(alpha_xi) > MAX_XI_ORDER:
            raise OrderExceeded(f"xi-derivative order {sum(alpha_xi)} exceeds {MAX_XI_ORDER}")
        node = x_derivative(xi_derivative(self.node, alpha_xi), alpha_x)
        return HomogeneousComponent(node, self.torus, self.lam)


@dataclass
class SymbolExpansion:
    """``a ~ sum_j a_{m-j}`` truncated at depth ``J``.

    ``components[j]`` has degree ``order - j``.  When ``complete`` is set the
    components beyond the stored depth vanish identically (finite symbols
    such as those of differential operators), so any depth is available.
    """

    torus: Torus
    order: int
    components: list
    complete: bool = False
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for j, c in enumerate(self.components):
            if c.degree != self.order - j and not c.is_zero:
                raise ValueError(f"component {j} has degree {c.degree}, expected {self.order - j}")

    @property
    def n(self) -> int:
        return self.torus.n

    @property
    def depth(self) -> int:
        return len(self.components) - 1

    @property
    def shape(self):
        return self.components[0].shape

    @property
    def principal(self) -> HomogeneousComponent:
        return self.components[0]

    def available(self, depth: int) -> bool:
        return self.complete or depth <= self.depth

    def component(self, j: int) -> HomogeneousComponent:
        if j < len(self.components):
            return self.components[j]
        if self.complete:
            return HomogeneousComponent(Zero(self.n, self.shape, self.order - j), self.torus)
        raise DepthUnavailable(f"component {j} requested but expansion stops at depth {self.depth}")

    def truncated(self, depth: int) -> "SymbolExpansion":
        comps = [self.component(j) for j in range(depth + 1)]
        complete = self.complete and depth >= self.depth
        return SymbolExpansion(self.torus, self.order, comps, complete, self.label, dict(self.meta))

    def is_x_independent(self) -> bool:
        z = _zero_mode(self.n)
        return all(c.node.modes <= {z} for c in self.components)

    def max_frequency(self) -> int:
        modes = [k for c in self.components for k in c.node.modes]
        return max((max(abs(v) for v in k) for k in modes), default=0)

    def combine(self, other: "SymbolExpansion", c_self=1.0, c_other=1.0) -> "SymbolExpansion":
        """Linear combination of two expansions of the same order."""
        if other.order != self.order:
            raise ValueError("orders differ")
        depth = min(self.depth if not self.complete else 10**6, other.depth if not other.complete else 10**6)
        depth = max(self.depth, other.depth) if depth >= 10**6 else depth
        comps = [
            HomogeneousComponent(add(self.component(j).node, other.component(j).node, coefs=[c_self, c_other]), self.torus)
            for j in range(depth + 1)
        ]
        return SymbolExpansion(self.torus, self.order, comps, self.complete and other.complete)


def from_terms(torus: Torus, shape, order: int, components, label: str = "", complete: bool = True) -> SymbolExpansion:
    """Build an expansion from term lists.

    ``components[j]`` is a list of ``(frequency, xi_exponents, norm_power,
    matrix)`` tuples for the degree ``order - j`` part.
    """
    n = torus.n
    comps = []
    for j, terms in enumerate(components):
        if terms:
            node = Terms(n, shape, terms)
            if node.degree != order - j and not node.is_zero:
                raise ValueError(f"component {j}: degree {node.degree} but expected {order - j}")
            if node.is_zero:
                node = Zero(n, shape, order - j)
        else:
            node = Zero(n, shape, order - j)
        comps.append(HomogeneousComponent(node, torus))
    return SymbolExpansion(torus, order, comps, complete, label)


def identity_expansion(torus: Torus, size: int) -> SymbolExpansion:
    n = torus.n
    return from_terms(torus, (size, size), 0, [[((0,) * n, (0,) * n, 0.0, np.eye(size))]], label="1")


def compose(a: SymbolExpansion, b: SymbolExpansion, depth: int) -> SymbolExpansion:
    """Asymptotic product ``a # b`` down to ``depth``.

    Component ``l`` is ``sum_{|alpha|+j+k=l} (-i)**|alpha| / alpha! d_xi^alpha a_j d_x^alpha b_k``.
    """
    if a.torus != b.torus:
        raise ValueError("expansions live on different tori")
    if a.shape[1] != b.shape[0]:
        raise ValueError("fiber dimensions do not match")
    n = a.n
    # a resolvent parameter, if either factor carries one, rides along
    lam = next((c.lam for c in list(a.components) + list(b.components) if c.lam is not None), None)
    for j in range(depth + 1):
        if not a.available(j) or not b.available(j):
            raise DepthUnavailable(f"compose to depth {depth} needs component {j}")
    comps = []
    for l in range(depth + 1):
        nodes, coefs = [], []
        for j in range(l + 1):
            aj = a.component(j).node
            if aj.is_zero:
                continue
            for k in range(l - j + 1):
                bk = b.component(k).node
                if bk.is_zero:
                    continue
                d = l - j - k
                for alpha in multi_indices(n, d):
                    term = mul(xi_derivative(aj, alpha), x_derivative(bk, alpha))
                    if term.is_zero:
                        continue
                    nodes.append(term)
                    coefs.append(COMPOSE_PHASE ** d / _factorial(alpha))
        degree = a.order + b.order - l
        node = add(*nodes, coefs=coefs) if nodes else Zero(n, (a.shape[0], b.shape[1]), degree)
        comps.append(HomogeneousComponent(node, a.torus, lam))
    complete = a.complete and b.complete and depth >= a.depth + b.depth
    return SymbolExpansion(a.torus, a.order + b.order, comps, complete)


@dataclass
class ParityReport:
    ok: bool
    max_violation: float
    per_component: list


def sample_points(torus: Torus, n_xi: int = 12, seed: int = 7, max_frequency: int = 0):
    """Deterministic torus grid and random unit covectors for sampling checks."""
    rng = np.random.default_rng(seed)
    xi = rng.normal(size=(n_xi, torus.n))
    xi /= np.linalg.norm(xi, axis=1, keepdims=True)
    x = torus.grid(max_frequency, minimum=3)
    return x, xi


def odd_class_check(a: SymbolExpansion, parity_tol: float = PARITY_TOL, n_xi: int = 12, seed: int = 7) -> ParityReport:
    """Check ``a_{m-j}(x, -xi) = (-1)**(m-j) a_{m-j}(x, xi)`` on sampled fibers."""
    x, xi = sample_points(a.torus, n_xi, seed, a.max_frequency())
    per = []
    for j, comp in enumerate(a.components):
        if comp.is_zero:
            per.append(0.0)
            continue
        plus = comp.eval(x, xi)
        minus = comp.eval(x, -xi)
        deg = a.order - j
        per.append(float(np.max(np.abs(minus - (-1) ** deg * plus))))
    worst = max(per) if per else 0.0
    return ParityReport(worst <= parity_tol, worst, per)


def euler_defect(comp: HomogeneousComponent, x, xi) -> float:
    """``max |sum_i xi_i d_{xi_i} a - degree * a|`` at the given points."""
    n = comp.n
    total = 0
    for i in range(n):
        e = [0] * n
        e[i] = 1
        d = comp.derive(alpha_xi=e).eval(x, xi)
        total = total + np.asarray(xi)[:, i][None, :, None, None] * d
    return float(np.max(np.abs(total - comp.degree * comp.eval(x, xi))))

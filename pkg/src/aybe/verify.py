"""Residual suites: seeded pole-avoiding sample plans and structured reports.

Each suite draws a deterministic sequence of complex sample tuples,
rejecting any tuple for which some evaluation point of the identity comes
closer than the guard margin to a declared pole, evaluates the identity,
and reports the maximum absolute coefficient of left minus right.
Aggregation is a plain max, so reports are independent of evaluation
order; identical seeds give bit-identical reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .solutions import RFun, abc_parts, laurent_r0, laurent_r1, s_product
from .structures import OrderedBDStructure
from .tensors import Tensor2, compose2, embed, swap_factors, sym_commutator, unit2

__all__ = [
    "SamplePlan",
    "Report",
    "SamplerExhausted",
    "residual_aybe",
    "residual_unitarity",
    "residual_qybe",
    "residual_qybe_unitarity",
    "residual_cybe",
    "residual_aybe2",
    "residual_s_identity",
    "residual_cubic",
    "residual_abc",
    "residual_h_equation",
    "residual_symmetry",
    "residual_laurent_identity",
    "perturb",
    "DEFAULT_TOL",
    "EXTRACTION_TOL",
]

DEFAULT_TOL = 1e-8
EXTRACTION_TOL = 1e-5


class SamplerExhausted(RuntimeError):
    """Rejection sampling failed; the guards are too tight for the rectangle."""


@dataclass(frozen=True)
class SamplePlan:
    """Deterministic pole-avoiding sampling plan.

    Samples are complex tuples with real and imaginary parts uniform on the
    rectangle; a candidate is rejected unless every evaluation point of the
    identity keeps at least ``guard_margin`` distance from every declared
    pole expression.
    """

    seed: int = 0
    count: int = 32
    rect: tuple[float, float, float, float] = (-2.0, 2.0, -2.0, 2.0)
    guard_margin: float = 0.05
    max_rejects: int = 10_000

    def draw(self, nvars: int, ok) -> list[tuple[complex, ...]]:
        rng = np.random.default_rng(self.seed)
        lo_re, hi_re, lo_im, hi_im = self.rect
        points, rejects = [], 0
        while len(points) < self.count:
            z = tuple(
                complex(rng.uniform(lo_re, hi_re), rng.uniform(lo_im, hi_im))
                for _ in range(nvars)
            )
            if ok(z):
                points.append(z)
            else:
                rejects += 1
                if rejects > self.max_rejects:
                    raise SamplerExhausted(
                        f"exceeded {self.max_rejects} rejections; loosen the plan"
                    )
        return points


@dataclass(frozen=True)
class Report:
    """Outcome of one residual suite."""

    suite: str
    plan: SamplePlan
    per_sample: tuple[float, ...]
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.per_sample) if self.per_sample else 0.0

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol

    def to_json(self) -> str:
        doc = {
            "suite": self.suite,
            "seed": self.plan.seed,
            "samples": len(self.per_sample),
            "max_residual": self.max_residual,
            "tol": self.tol,
            "pass": self.passed,
        }
        return json.dumps(doc, sort_keys=True)

    def __repr__(self) -> str:
        flag = "pass" if self.passed else "FAIL"
        return f"Report({self.suite}: max={self.max_residual:.3g} tol={self.tol:g} {flag})"


def _op(t: Tensor2, slots) -> np.ndarray:
    return embed(t, slots).op_matrix()


def _max_abs(m: np.ndarray) -> float:
    return float(np.abs(m).max())


def _guard_all(r: RFun, pts, margin: float) -> bool:
    return all(r.pole_distance(*p) > margin for p in pts)


def _run(suite, plan, tol, nvars, ok, residual) -> Report:
    samples = plan.draw(nvars, ok)
    per = tuple(float(residual(*z)) for z in samples)
    return Report(suite, plan, per, tol)


# ---------------------------------------------------------------------------
# associative equation and unitarity
# ---------------------------------------------------------------------------


def residual_aybe(r: RFun, plan: SamplePlan | None = None, tol: float = DEFAULT_TOL) -> Report:
    """Associative Yang-Baxter residual.

    Two-variable functions are tested in (u, u', v, v'); one-variable
    functions in the u-only degeneration of the same equation.
    """
    plan = plan or SamplePlan()
    if r.arity == 2:

        def pts(u, up, v, vp):
            return [(-up, v), (u + up, v + vp), (u + up, vp), (u, v), (u, v + vp), (up, vp)]

        def res(u, up, v, vp):
            t = (
                _op(r(-up, v), (1, 2)) @ _op(r(u + up, v + vp), (1, 3))
                - _op(r(u + up, vp), (2, 3)) @ _op(r(u, v), (1, 2))
                + _op(r(u, v + vp), (1, 3)) @ _op(r(up, vp), (2, 3))
            )
            return _max_abs(t)

        return _run(
            "aybe", plan, tol, 4,
            lambda z: _guard_all(r, pts(*z), plan.guard_margin),
            res,
        )

    if r.arity == 1:

        def pts1(u, up):
            return [(-up,), (u + up,), (u,), (up,)]

        def res1(u, up):
            t = (
                _op(r(-up), (1, 2)) @ _op(r(u + up), (1, 3))
                - _op(r(u + up), (2, 3)) @ _op(r(u), (1, 2))
                + _op(r(u), (1, 3)) @ _op(r(up), (2, 3))
            )
            return _max_abs(t)

        return _run(
            "aybe", plan, tol, 2,
            lambda z: _guard_all(r, pts1(*z), plan.guard_margin),
            res1,
        )

    raise ValueError("aybe residual supports one- and two-variable functions")


def residual_unitarity(r: RFun, plan: SamplePlan | None = None, tol: float = DEFAULT_TOL) -> Report:
    """Unitarity residual r^21 at the negated arguments plus r itself."""
    plan = plan or SamplePlan()
    if r.arity == 2:

        def res(u, v):
            return (swap_factors(r(-u, -v)) + r(u, v)).max_abs()

        ok = lambda z: _guard_all(r, [z, (-z[0], -z[1])], plan.guard_margin)
        return _run("unitarity", plan, tol, 2, ok, res)

    if r.arity == 1:

        def res1(u):
            return (swap_factors(r(-u)) + r(u)).max_abs()

        ok1 = lambda z: _guard_all(r, [z, (-z[0],)], plan.guard_margin)
        return _run("unitarity", plan, tol, 1, ok1, res1)

    raise ValueError("unitarity residual supports one- and two-variable functions")


# ---------------------------------------------------------------------------
# quantum and classical equations
# ---------------------------------------------------------------------------


def residual_qybe(
    R: RFun, u_fixed=0.9 + 0.2j, plan: SamplePlan | None = None, tol: float = DEFAULT_TOL
) -> Report:
    """Quantum Yang-Baxter residual in v at fixed u."""
    plan = plan or SamplePlan()

    def pts(v, vp):
        return [(u_fixed, v), (u_fixed, v + vp), (u_fixed, vp)]

    def res(v, vp):
        a = _op(R(u_fixed, v), (1, 2))
        b = _op(R(u_fixed, v + vp), (1, 3))
        c = _op(R(u_fixed, vp), (2, 3))
        return _max_abs(a @ b @ c - c @ b @ a)

    return _run(
        "qybe", plan, tol, 2,
        lambda z: _guard_all(R, pts(*z), plan.guard_margin),
        res,
    )


def residual_qybe_unitarity(
    R: RFun, plan: SamplePlan | None = None, tol: float = DEFAULT_TOL
) -> Report:
    """Residual of R(u, v) R^21(u, -v) - 1 (x) 1."""
    plan = plan or SamplePlan()
    one = unit2(R.n)

    def res(u, v):
        return (compose2(R(u, v), swap_factors(R(u, -v))) - one).max_abs()

    ok = lambda z: _guard_all(R, [z, (z[0], -z[1])], plan.guard_margin)
    return _run("qybe-unitarity", plan, tol, 2, ok, res)


def residual_cybe(r0: RFun, plan: SamplePlan | None = None, tol: float = DEFAULT_TOL) -> Report:
    """Classical Yang-Baxter residual for a one-variable function."""
    plan = plan or SamplePlan()
    if r0.arity != 1:
        raise ValueError("cybe residual needs a one-variable function")

    def pts(v, vp):
        return [(v,), (v + vp,), (vp,)]

    def res(v, vp):
        a = _op(r0(v), (1, 2))
        b = _op(r0(v + vp), (1, 3))
        c = _op(r0(vp), (2, 3))
        t = (a @ b - b @ a) - (c @ a - a @ c) + (b @ c - c @ b)
        return _max_abs(t)

    return _run(
        "cybe", plan, tol, 2,
        lambda z: _guard_all(r0, pts(*z), plan.guard_margin),
        res,
    )


# ---------------------------------------------------------------------------
# multiplicative three-variable form
# ---------------------------------------------------------------------------


def residual_aybe2(rm: RFun, plan: SamplePlan | None = None, tol: float = DEFAULT_TOL) -> Report:
    """Residual of the three-variable associative equation plus its unitarity."""
    plan = plan or SamplePlan()
    if rm.arity != 3:
        raise ValueError("this residual needs a three-variable function")

    def pts(x, xp, y1, y2, y3):
        return [
            (1.0 / xp, y1, y2),
            (x * xp, y1, y3),
            (x * xp, y2, y3),
            (x, y1, y2),
            (x, y1, y3),
            (xp, y2, y3),
            (1.0 / x, y2, y1),
        ]

    def ok(z):
        x, xp = z[0], z[1]
        if min(abs(x), abs(xp)) < plan.guard_margin:
            return False
        return _guard_all(rm, pts(*z), plan.guard_margin)

    def res(x, xp, y1, y2, y3):
        t = (
            _op(rm(1.0 / xp, y1, y2), (1, 2)) @ _op(rm(x * xp, y1, y3), (1, 3))
            - _op(rm(x * xp, y2, y3), (2, 3)) @ _op(rm(x, y1, y2), (1, 2))
            + _op(rm(x, y1, y3), (1, 3)) @ _op(rm(xp, y2, y3), (2, 3))
        )
        unit = (swap_factors(rm(x, y1, y2)) + rm(1.0 / x, y2, y1)).max_abs()
        return max(_max_abs(t), unit)

    return _run("aybe2", plan, tol, 5, ok, res)


def residual_abc(
    obd: OrderedBDStructure,
    plan: SamplePlan | None = None,
    tol: float = DEFAULT_TOL,
    parts=abc_parts,
) -> Report:
    """The four closure equations of the a/b/c decomposition.

    (i) the associative equation for a alone, (ii) b12 b13 = 0,
    (iii) the quadratic b relation, (iv) the mixed a/c relation.
    ``parts`` may substitute another decomposition, e.g. for mutation tests.
    """
    plan = plan or SamplePlan()
    n = obd.n

    def guard(x):
        return min(abs(x), abs(x ** n - 1.0))

    def ok(z):
        x, xp = z
        return all(
            guard(w) > plan.guard_margin
            for w in (x, xp, 1.0 / x, 1.0 / xp, x * xp)
        )

    def res(x, xp):
        ax, bx, cx = parts(obd, x)
        axp, bxp, cxp = parts(obd, xp)
        a_inv_xp = parts(obd, 1.0 / xp)[0]
        a_prod, b_prod, c_prod = parts(obd, x * xp)
        r1 = (
            _op(a_inv_xp, (1, 2)) @ _op(a_prod, (1, 3))
            - _op(a_prod, (2, 3)) @ _op(ax, (1, 2))
            + _op(ax, (1, 3)) @ _op(axp, (2, 3))
        )
        r2 = _op(bx, (1, 2)) @ _op(bxp, (1, 3))
        r3 = (
            _op(bx, (1, 3)) @ _op(bxp, (2, 3))
            - _op(bxp, (2, 1)) @ _op(b_prod, (1, 3))
            - _op(b_prod, (2, 3)) @ _op(bx, (1, 2))
        )
        r4 = (
            _op(cx, (1, 3)) @ _op(axp, (2, 3))
            + _op(a_inv_xp, (1, 2)) @ _op(c_prod, (1, 3))
            - _op(c_prod, (2, 3)) @ _op(ax, (1, 2))
            + _op(ax, (1, 3)) @ _op(cxp, (2, 3))
        )
        return max(_max_abs(r1), _max_abs(r2), _max_abs(r3), _max_abs(r4))

    return _run("abc", plan, tol, 2, ok, res)


# ---------------------------------------------------------------------------
# product identities
# ---------------------------------------------------------------------------


def _trig_s_scalar(u, v):
    return (np.exp(v / 2) - np.exp(-v / 2)) ** -2 - (np.exp(u / 2) - np.exp(-u / 2)) ** -2


def residual_s_identity(
    r: RFun,
    plan: SamplePlan | None = None,
    tol: float = DEFAULT_TOL,
    scalar=None,
) -> Report:
    """Residual of r(u,v) r(-u,v) against a scalar multiple of 1 (x) 1.

    The default scalar is the trigonometric closed form
    (2 sinh(v/2))^-2 - (2 sinh(u/2))^-2; pass another callable (u, v) ->
    complex to test families with a different product normalization,
    e.g. lambda u, v: 1/v**2.
    """
    plan = plan or SamplePlan()
    scalar = scalar or _trig_s_scalar
    s = s_product(r)
    one = unit2(r.n)

    def res(u, v):
        return (s(u, v) - complex(scalar(u, v)) * one).max_abs()

    def ok(z):
        u, v = z
        if s.pole_distance(u, v) <= plan.guard_margin:
            return False
        # the target scalar has its own poles at u, v = 0 for trig forms
        return min(abs(np.exp(u) - 1.0), abs(np.exp(v) - 1.0)) > plan.guard_margin

    return _run("s-identity", plan, tol, 2, ok, res)


def residual_cubic(r: RFun, plan: SamplePlan | None = None, tol: float = DEFAULT_TOL) -> Report:
    """Cubic identity relating triple products of r to s-brackets.

    For u_ij = u_i - u_j, v_ij = v_i - v_j the three expressions

      r12(u12,v12) r13(u23,v13) r23(u12,v23) - r23(u23,v23) r13(u12,v13) r12(u23,v12)
      s23(u23,v23) r13(u13,v13) - r13(u13,v13) s23(u21,v23)
      r13(u13,v13) s12(u32,v12) - s12(u12,v12) r13(u13,v13)

    agree for every unitary solution; the residual is the largest pairwise
    deviation.
    """
    plan = plan or SamplePlan()
    s = s_product(r)

    def pairs(u1, u2, u3, v1, v2, v3):
        u12, u13, u23 = u1 - u2, u1 - u3, u2 - u3
        v12, v13, v23 = v1 - v2, v1 - v3, v2 - v3
        return u12, u13, u23, v12, v13, v23

    def pts(*z):
        u12, u13, u23, v12, v13, v23 = pairs(*z)
        out = [
            (u12, v12), (u23, v13), (u12, v23), (u23, v23), (u12, v13), (u23, v12),
            (u13, v13),
        ]
        out += [(-u12, v12), (-u23, v23), (-u12, v23), (-u23, v12)]
        return out

    def res(*z):
        u12, u13, u23, v12, v13, v23 = pairs(*z)
        e1 = (
            _op(r(u12, v12), (1, 2)) @ _op(r(u23, v13), (1, 3)) @ _op(r(u12, v23), (2, 3))
            - _op(r(u23, v23), (2, 3)) @ _op(r(u12, v13), (1, 3)) @ _op(r(u23, v12), (1, 2))
        )
        e2 = (
            _op(s(u23, v23), (2, 3)) @ _op(r(u13, v13), (1, 3))
            - _op(r(u13, v13), (1, 3)) @ _op(s(-u12, v23), (2, 3))
        )
        e3 = (
            _op(r(u13, v13), (1, 3)) @ _op(s(-u23, v12), (1, 2))
            - _op(s(u12, v12), (1, 2)) @ _op(r(u13, v13), (1, 3))
        )
        return max(_max_abs(e1 - e2), _max_abs(e2 - e3))

    return _run(
        "cubic", plan, tol, 6,
        lambda z: _guard_all(r, pts(*z), plan.guard_margin),
        res,
    )


def residual_laurent_identity(
    r: RFun,
    plan: SamplePlan | None = None,
    tol: float = EXTRACTION_TOL,
    eps: float = 1e-4,
) -> Report:
    """Quadratic identity between the first two Laurent coefficients at u = 0:

        r0^12(v) r0^13(v+v') - r0^23(v') r0^12(v) + r0^13(v+v') r0^23(v')
          = r1^12(v) + r1^13(v+v') + r1^23(v'),

    with r0, r1 extracted numerically by central differencing.
    """
    plan = plan or SamplePlan()
    r0 = laurent_r0(r, eps)
    r1 = laurent_r1(r, eps)

    def pts(v, vp):
        return [(v,), (v + vp,), (vp,)]

    def res(v, vp):
        a = _op(r0(v), (1, 2))
        b = _op(r0(v + vp), (1, 3))
        c = _op(r0(vp), (2, 3))
        lhs = a @ b - c @ a + b @ c
        rhs = _op(r1(v), (1, 2)) + _op(r1(v + vp), (1, 3)) + _op(r1(vp), (2, 3))
        return _max_abs(lhs - rhs)

    return _run(
        "laurent-identity", plan, tol, 2,
        lambda z: _guard_all(r0, pts(*z), plan.guard_margin),
        res,
    )


# ---------------------------------------------------------------------------
# scalar functional equation and symmetries
# ---------------------------------------------------------------------------

_H_FORMS = {
    "inverse_v": (lambda v: 1.0 / v, lambda v: -1.0 / v ** 2),
    "half_coth": (
        lambda v: 0.5 / np.tanh(v / 2) - v / 12.0,
        lambda v: -0.25 / np.sinh(v / 2) ** 2 - 1.0 / 12.0,
    ),
}


def residual_h_equation(
    h_kind: str = "inverse_v",
    plan: SamplePlan | None = None,
    tol: float = 1e-10,
    h=None,
    h_prime=None,
) -> Report:
    """Residual of [h(v12)+h(v23)+h(v31)]^2 + h'(v12)+h'(v23)+h'(v31) = 0
    over triples (v1, v2, v3), with analytic derivatives.

    Solutions are rigid against adding multiples of v (the equation shifts
    by 3 lambda), so each family has a unique representative with Laurent
    expansion 1/v + O(v^3); for the hyperbolic family that representative
    is (1/2) coth(v/2) - v/12, which is what ``half_coth`` denotes.
    """
    plan = plan or SamplePlan()
    if h is None:
        if h_kind not in _H_FORMS:
            raise ValueError(f"unknown h form {h_kind!r}")
        h, h_prime = _H_FORMS[h_kind]

    def ok(z):
        v1, v2, v3 = z
        return all(
            min(abs(w), abs(np.exp(w) - 1.0)) > plan.guard_margin
            for w in (v1 - v2, v2 - v3, v3 - v1)
        )

    def res(v1, v2, v3):
        d = (v1 - v2, v2 - v3, v3 - v1)
        total = sum(h(w) for w in d) ** 2 + sum(h_prime(w) for w in d)
        return abs(total)

    return _run(f"h-equation[{h_kind}]", plan, tol, 3, ok, res)


def residual_symmetry(
    r: RFun, a, plan: SamplePlan | None = None, tol: float = DEFAULT_TOL
) -> Report:
    """Residual of [a (x) 1 + 1 (x) a, r(...)] over guarded samples."""
    plan = plan or SamplePlan()

    def res(*z):
        return sym_commutator(r(*z), a).max_abs()

    ok = lambda z: r.pole_distance(*z) > plan.guard_margin
    return _run("symmetry", plan, tol, r.arity, ok, res)


# ---------------------------------------------------------------------------
# harness sanity
# ---------------------------------------------------------------------------


def perturb(r: RFun, delta: float = 0.1, index=None) -> RFun:
    """Add ``delta`` to one coefficient of every value; for mutation testing."""
    idx = index or (0,) * 4

    def fn(*args):
        t = r(*args)
        c = t.coeffs.copy()
        c[idx] += delta
        return Tensor2(t.n, c)

    return RFun(r.n, r.kind + "+perturbed", r.arity, fn, r.guards)

"""2-vector algebra in R^4: wedge products, plane projections, angle bounds.

Coordinates follow the basis e_i ^ e_j, 1 <= i < j <= 4, in the fixed order
(12, 13, 14, 23, 24, 34).  The norm is the Euclidean norm in these
coordinates, which is the one induced by the standard scalar product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidInputError, PreconditionError

BASIS_PAIRS: Tuple[Tuple[int, int], ...] = (
    (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

FRAME_TOL = 1e-12


def wedge(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Exterior product of two vectors in R^4 (six wedge coordinates).

    Accepts batched input of shape (..., 4); returns shape (..., 6).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.empty(x.shape[:-1] + (6,), dtype=float)
    for k, (i, j) in enumerate(BASIS_PAIRS):
        out[..., k] = x[..., i] * y[..., j] - x[..., j] * y[..., i]
    return out


def two_vector_norm(xi: np.ndarray) -> np.ndarray:
    return np.linalg.norm(np.asarray(xi, dtype=float), axis=-1)


def plucker_form(xi: np.ndarray) -> np.ndarray:
    """The quadratic whose vanishing characterizes decomposable 2-vectors."""
    xi = np.asarray(xi, dtype=float)
    return (xi[..., 0] * xi[..., 5] - xi[..., 1] * xi[..., 4]
            + xi[..., 2] * xi[..., 3])


def is_simple(xi: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff xi is (numerically) a wedge of two vectors."""
    xi = np.asarray(xi, dtype=float)
    n2 = float(xi @ xi)
    return abs(float(plucker_form(xi))) <= tol * max(n2, tol)


def _check_frame(frame: np.ndarray) -> np.ndarray:
    frame = np.asarray(frame, dtype=float)
    if frame.shape != (2, 4):
        raise InvalidInputError("a plane frame is a 2x4 matrix of basis rows")
    gram = frame @ frame.T
    if not np.allclose(gram, np.eye(2), atol=FRAME_TOL):
        raise InvalidInputError("frame rows must be orthonormal to 1e-12")
    return frame


def induced_projection_matrix(frame: np.ndarray) -> np.ndarray:
    """6x6 matrix of the map induced on 2-vectors by orthogonal projection."""
    frame = _check_frame(frame)
    p = frame.T @ frame
    cols = []
    for (i, j) in BASIS_PAIRS:
        cols.append(wedge(p[:, i], p[:, j]))
    return np.stack(cols, axis=1)


def plane_projection_norm(frame: np.ndarray, xi: np.ndarray) -> float:
    """Norm of the projected 2-vector; for xi = x^y this is |p(x) ^ p(y)|."""
    L = induced_projection_matrix(frame)
    return float(np.linalg.norm(L @ np.asarray(xi, dtype=float)))


def characteristic_angles(frame_p: np.ndarray, frame_q: np.ndarray
                          ) -> Tuple[float, float]:
    """Principal angles between two 2-planes, ascending in [0, pi/2].

    The smaller angle is the minimum angle between unit vectors of the two
    planes; the cosines are the singular values of the frame Gram matrix.
    """
    P = _check_frame(frame_p)
    Q = _check_frame(frame_q)
    s = np.linalg.svd(P @ Q.T, compute_uv=False)
    s = np.clip(s, 0.0, 1.0)
    angles = np.arccos(s)
    return float(min(angles)), float(max(angles))


@dataclass(frozen=True)
class PlanePair:
    """Two 2-planes with orthonormal frames and cached characteristic angles."""

    frame1: np.ndarray
    frame2: np.ndarray
    alpha1: float = 0.0
    alpha2: float = 0.0

    def __post_init__(self):
        f1 = _check_frame(self.frame1)
        f2 = _check_frame(self.frame2)
        a1, a2 = characteristic_angles(f1, f2)
        object.__setattr__(self, "frame1", f1)
        object.__setattr__(self, "frame2", f2)
        object.__setattr__(self, "alpha1", a1)
        object.__setattr__(self, "alpha2", a2)

    @classmethod
    def orthogonal(cls) -> "PlanePair":
        return cls(frame1=np.array([[1., 0., 0., 0.], [0., 1., 0., 0.]]),
                   frame2=np.array([[0., 0., 1., 0.], [0., 0., 0., 1.]]))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "PlanePair":
        """Pair with angles (theta, phi): the second plane is spanned by
        cos(t) e1 + sin(t) e3 and cos(p) e2 + sin(p) e4."""
        if not (0 <= theta <= phi <= math.pi / 2 + 1e-12):
            raise InvalidInputError("need 0 <= theta <= phi <= pi/2")
        f1 = np.array([[1., 0., 0., 0.], [0., 1., 0., 0.]])
        f2 = np.array([
            [math.cos(theta), 0.0, math.sin(theta), 0.0],
            [0.0, math.cos(phi), 0.0, math.sin(phi)]])
        return cls(frame1=f1, frame2=f2)

    def is_orthogonal(self, tol: float = 1e-9) -> bool:
        return self.alpha1 >= math.pi / 2 - tol

    def projection_bound(self) -> float:
        """Upper bound for |p1(xi)| + |p2(xi)| over unit simple 2-vectors."""
        if self.is_orthogonal():
            return 1.0
        return 1.0 + 2.0 * math.cos(self.alpha1)

    def projection_matrices(self) -> Tuple[np.ndarray, np.ndarray]:
        return (induced_projection_matrix(self.frame1),
                induced_projection_matrix(self.frame2))


def equality_family(pair: PlanePair, alpha: float,
                    frames: Optional[Tuple[np.ndarray, ...]] = None) -> np.ndarray:
    """A simple unit 2-vector attaining projection-sum equality.

    For an orthogonal pair, wedging cos(a) v1 + sin(a) u1 with
    cos(a) v2 + sin(a) u2 (v_i, u_i orthonormal in the two planes) gives
    |p1| + |p2| = cos^2 + sin^2 = 1 exactly.
    """
    if not pair.is_orthogonal():
        raise PreconditionError("the equality family needs orthogonal planes")
    if frames is None:
        v1, v2 = pair.frame1
        u1, u2 = pair.frame2
    else:
        v1, v2, u1, u2 = (np.asarray(f, dtype=float) for f in frames)
    c, s = math.cos(alpha), math.sin(alpha)
    x = c * v1 + s * u1
    y = c * v2 + s * u2
    return wedge(x, y)


def sample_simple_unit(rng: np.random.Generator, count: int) -> np.ndarray:
    """Uniformly random simple unit 2-vectors (orthonormalized Gaussian pairs)."""
    x = rng.standard_normal((count, 4))
    y = rng.standard_normal((count, 4))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    y -= (np.sum(x * y, axis=1, keepdims=True)) * x
    y /= np.linalg.norm(y, axis=1, keepdims=True)
    return wedge(x, y)


@dataclass(frozen=True)
class BoundReport:
    """Result of a Monte-Carlo projection-bound verification."""

    max_sum: float
    bound: float
    margin: float
    samples: int
    seed: int
    alpha1: float
    alpha2: float

    def holds(self, tol: float = 1e-9) -> bool:
        return self.max_sum <= self.bound + tol


def projection_sums(pair: PlanePair, xis: np.ndarray) -> np.ndarray:
    """|p1(xi)| + |p2(xi)| for a batch of 2-vectors."""
    L1, L2 = pair.projection_matrices()
    xis = np.asarray(xis, dtype=float)
    return (np.linalg.norm(xis @ L1.T, axis=-1)
            + np.linalg.norm(xis @ L2.T, axis=-1))


def verify_projection_bounds(pair: PlanePair, samples: int, seed: int,
                             include: Optional[np.ndarray] = None) -> BoundReport:
    """Monte-Carlo check of the projection-sum bound for a plane pair.

    Draws `samples` random simple unit 2-vectors and reports the maximum of
    |p1| + |p2| against the applicable bound.  Extra 2-vectors (for instance
    the equality family) can be appended to the sample set via `include`.
    """
    if samples < 1:
        raise PreconditionError("need at least one sample")
    rng = np.random.default_rng(seed)
    xis = sample_simple_unit(rng, int(samples))
    if include is not None and len(include):
        xis = np.vstack([xis, np.asarray(include, dtype=float)])
    sums = projection_sums(pair, xis)
    max_sum = float(np.max(sums))
    bound = pair.projection_bound()
    return BoundReport(max_sum=max_sum, bound=bound, margin=bound - max_sum,
                       samples=int(samples), seed=int(seed),
                       alpha1=pair.alpha1, alpha2=pair.alpha2)


def projected_area_sums(triangles: Sequence[np.ndarray], pair: PlanePair
                        ) -> Tuple[float, float, float]:
    """Per-triangle projected-area sums against the scaled total area.

    Returns (sum of areas under p1, sum under p2, lambda * total area) where
    lambda is the largest per-triangle projection sum, so the first two always
    total at most the third (overlap-free, per-triangle form).
    """
    tris = np.asarray(triangles, dtype=float)
    if tris.ndim == 2:
        tris = tris[None]
    if tris.shape[1:] != (3, 4):
        raise InvalidInputError("triangles must have shape (m, 3, 4)")
    a = tris[:, 1] - tris[:, 0]
    b = tris[:, 2] - tris[:, 0]
    xi = wedge(a, b)
    norms = np.linalg.norm(xi, axis=1)
    if np.any(norms < 1e-12):
        raise InvalidInputError("degenerate triangle in input")
    areas = norms / 2.0
    unit = xi / norms[:, None]
    L1, L2 = pair.projection_matrices()
    s1 = np.linalg.norm(unit @ L1.T, axis=1)
    s2 = np.linalg.norm(unit @ L2.T, axis=1)
    lam = float(np.max(s1 + s2))
    return (float(np.sum(s1 * areas)), float(np.sum(s2 * areas)),
            lam * float(np.sum(areas)))

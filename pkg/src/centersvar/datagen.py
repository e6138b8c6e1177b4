"""Ground-truth instance generation.

Ambiguous center pairs exist exactly when the two world configurations admit
a common preimage scene one dimension up: points Z in P^4 and two full-rank
projections A', B' to P^3 with centers a', b' off the scene, none of the
scene points on the line joining the centers. Projecting the scene from
that line factors through both cameras, so

    a = A' b'   and   b = B' a'

is an explicit ambiguous pair for X = A' Z, Y = B' Z. The generator samples
integer scenes and matrices, rejects until the exact genericity predicates
of the target n hold, and certifies the produced pair by invariant
proportionality before returning it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .errors import DegenerateInput, GenerationFailed, InvalidInput
from .invariants import fano15, fano15_lifted, g5_lifted, t6_lifted
from .projective import (Configuration, ProjectivePoint, StabilityClass,
                         apply_matrix, center_admissible, homography_fit,
                         normalizing_transform, on_line, project,
                         stability_class)


@dataclass(frozen=True)
class Reconstruction:
    """A P^4 scene with two projections and the ambiguous center pair."""

    z: Configuration
    aprime: tuple[tuple[Fraction, ...], ...]
    bprime: tuple[tuple[Fraction, ...], ...]
    aprime_center: ProjectivePoint
    bprime_center: ProjectivePoint
    x: Configuration
    y: Configuration
    a_true: ProjectivePoint
    b_true: ProjectivePoint
    seed: int
    coord_bound: int

    @property
    def n(self) -> int:
        return self.z.n


def _random_point(rng: random.Random, dim: int, bound: int) -> list[int]:
    while True:
        v = [rng.randint(-bound, bound) for _ in range(dim + 1)]
        if any(v):
            return v


def _random_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def _distinct(c: Configuration) -> bool:
    return len(set(c.points)) == c.n


def _all_quadruples_independent(c: Configuration) -> bool:
    for combo in combinations(range(c.n), 4):
        if linalg.det([c[i].coords for i in combo]) == 0:
            return False
    return True


def _window_7_predicates(x: Configuration, y: Configuration,
                         a: ProjectivePoint, b: ProjectivePoint) -> bool:
    from .loci import quadric_pair_n6
    if not (_all_quadruples_independent(x) and _all_quadruples_independent(y)):
        return False
    if not (center_admissible(x, a, 7, "Goepel") and center_admissible(y, b, 7, "Goepel")):
        return False
    if stability_class(Configuration([project(p, a) for p in x])) != StabilityClass.STABLE:
        return False
    if stability_class(Configuration([project(p, b) for p in y])) != StabilityClass.STABLE:
        return False
    for k in range(7):
        try:
            quadric_pair_n6(x.drop(k), y.drop(k))
        except DegenerateInput:
            return False
    return True


def _generic_enough(x: Configuration, y: Configuration, a: ProjectivePoint,
                    b: ProjectivePoint, n: int) -> bool:
    from .loci import quadric_pair_n6
    if not (_distinct(x) and _distinct(y)):
        return False
    if n <= 4:
        if a in x.points or b in y.points:
            return False
        from .loci import _general_position_image
        p = Configuration([project(pt, a) for pt in x])
        q = Configuration([project(pt, b) for pt in y])
        return _general_position_image(p) and _general_position_image(q)
    if n == 5:
        if not (center_admissible(x, a, 5) and center_admissible(y, b, 5)):
            return False
        try:
            normalizing_transform(x.points)
            normalizing_transform(y.points)
        except DegenerateInput:
            return False
        px = Configuration([project(pt, a) for pt in x])
        py = Configuration([project(pt, b) for pt in y])
        return (stability_class(px) == StabilityClass.STABLE
                and stability_class(py) == StabilityClass.STABLE)
    if n == 6:
        if not (center_admissible(x, a, 6) and center_admissible(y, b, 6)):
            return False
        # the mapping machinery also projects five-point subsets through a
        if any(x[i] != x[j] and on_line(a, x[i], x[j]) for i, j in combinations(range(6), 2)):
            return False
        if any(y[i] != y[j] and on_line(b, y[i], y[j]) for i, j in combinations(range(6), 2)):
            return False
        if not (_all_quadruples_independent(x) and _all_quadruples_independent(y)):
            return False
        px = Configuration([project(pt, a) for pt in x])
        py = Configuration([project(pt, b) for pt in y])
        if stability_class(px) != StabilityClass.STABLE:
            return False
        if stability_class(py) != StabilityClass.STABLE:
            return False
        try:
            quadric_pair_n6(x, y)
        except DegenerateInput:
            return False
        return True
    if n == 7:
        return _window_7_predicates(x, y, a, b)
    # n >= 8: the two overlapping 7-windows must be usable
    for idx in (list(range(7)), list(range(1, 8))):
        xs = Configuration([x[i] for i in idx])
        ys = Configuration([y[i] for i in idx])
        if not _window_7_predicates(xs, ys, a, b):
            return False
    return True


def _certified(x: Configuration, y: Configuration, a: ProjectivePoint,
               b: ProjectivePoint, n: int) -> bool:
    if n <= 4:
        p = Configuration([project(pt, a) for pt in x])
        q = Configuration([project(pt, b) for pt in y])
        if n < 4:
            return True  # general position was already checked
        return homography_fit(p, q) is not None
    if n == 5:
        va, vb = g5_lifted(x, a), g5_lifted(y, b)
    elif n == 6:
        va, vb = t6_lifted(x, a), t6_lifted(y, b)
    elif n == 7:
        va, vb = fano15_lifted(x, a), fano15_lifted(y, b)
    else:
        for idx in (list(range(7)), list(range(1, 8))):
            xs = Configuration([x[i] for i in idx])
            ys = Configuration([y[i] for i in idx])
            va, vb = fano15_lifted(xs, a), fano15_lifted(ys, b)
            if va.non_semistable or not va.proportional(vb):
                return False
        return True
    return not va.non_semistable and va.proportional(vb)


def generate_reconstruction(n: int, seed: int = 0, coord_bound: int = 10,
                            max_attempts: int = 4000) -> Reconstruction:
    """Sample a self-certifying ambiguous instance with n points.

    Deterministic per (n, seed, coord_bound). Scene points and camera
    matrices have integer entries within the bound; candidates are rejected
    until the exact genericity predicates of the target n hold and the
    invariant proportionality between (X, a) and (Y, b) checks out.
    """
    if n < 3:
        raise InvalidInput("generate_reconstruction needs n >= 3")
    if coord_bound < 10:
        raise InvalidInput("coord_bound must be at least 10")
    rng = random.Random((n, seed, coord_bound).__repr__())
    for _ in range(max_attempts):
        amat = _random_matrix(rng, 4, 5, coord_bound)
        bmat = _random_matrix(rng, 4, 5, coord_bound)
        if linalg.rank(amat) != 4 or linalg.rank(bmat) != 4:
            continue
        aprime = ProjectivePoint(linalg.kernel_basis(amat)[0])
        bprime = ProjectivePoint(linalg.kernel_basis(bmat)[0])
        if aprime == bprime:
            continue
        zs = []
        ok = True
        for _ in range(n):
            for _ in range(50):
                z = ProjectivePoint(_random_point(rng, 4, coord_bound))
                if linalg.rank([aprime.coords, bprime.coords, z.coords]) == 3:
                    zs.append(z)
                    break
            else:
                ok = False
                break
        if not ok:
            continue
        z = Configuration(zs)
        try:
            x = Configuration([apply_matrix(amat, p) for p in z])
            y = Configuration([apply_matrix(bmat, p) for p in z])
        except InvalidInput:
            continue
        a_true = apply_matrix(amat, bprime)
        b_true = apply_matrix(bmat, aprime)
        if not _generic_enough(x, y, a_true, b_true, n):
            continue
        if not _certified(x, y, a_true, b_true, n):
            continue
        return Reconstruction(
            z=z,
            aprime=tuple(tuple(Fraction(v) for v in row) for row in amat),
            bprime=tuple(tuple(Fraction(v) for v in row) for row in bmat),
            aprime_center=aprime, bprime_center=bprime,
            x=x, y=y, a_true=a_true, b_true=b_true,
            seed=seed, coord_bound=coord_bound)
    raise GenerationFailed(
        f"no generic instance with n={n} within {max_attempts} attempts; raise the bound")


DEGENERATE_KINDS = (
    "CoincidentPair", "FourCollinear", "FiveCollinear", "OnConic",
    "CoplanarCenter", "CollinearCenter", "BiplanarCenter",
    "CenterAtWorldPoint", "GenericCenter",
)


def _random_plane_config(rng: random.Random, n: int, bound: int = 9) -> Configuration:
    return Configuration([_random_point(rng, 2, bound) for _ in range(n)])


def _random_space_five(rng: random.Random, bound: int = 9) -> Configuration:
    while True:
        c = Configuration([_random_point(rng, 3, bound) for _ in range(5)])
        try:
            normalizing_transform(c.points)
            return c
        except DegenerateInput:
            continue


def generate_degenerate(kind: str, seed: int = 0, n: int = 7):
    """Configurations realizing a named degeneration, exactly.

    Plane kinds (CoincidentPair, FourCollinear, FiveCollinear, OnConic)
    return a Configuration of n points in P^2. Center kinds (CoplanarCenter,
    CollinearCenter, BiplanarCenter, CenterAtWorldPoint, GenericCenter)
    return a pair (five points of P^3, center) hitting one case of the
    five-point degeneration classifier.
    """
    rng = random.Random((kind, seed, n).__repr__())
    if kind == "OnConic":
        ts = rng.sample(range(-40, 41), n)
        return Configuration([(1, t, t * t) for t in ts])
    if kind == "CoincidentPair":
        while True:
            pts = [_random_point(rng, 2, 9) for _ in range(n - 1)]
            cfg = Configuration([pts[0]] + pts)
            if len(set(cfg.points)) == n - 1:
                return cfg
    if kind == "FiveCollinear":
        while True:
            cs = rng.sample(range(-9, 10), 5)
            rest = [_random_point(rng, 2, 9) for _ in range(n - 5)]
            cfg = Configuration([(1, 0, c) for c in cs] + rest)
            if len(set(cfg.points)) == n:
                return cfg
    if kind == "FourCollinear":
        while True:
            cs = rng.sample(range(-9, 10), 4)
            rest = [_random_point(rng, 2, 9) for _ in range(n - 4)]
            cfg = Configuration([(1, 0, c) for c in cs] + rest)
            if len(set(cfg.points)) != n:
                continue
            from .projective import _max_collinear
            if _max_collinear(cfg.points) != 4:
                continue
            if stability_class(cfg) != StabilityClass.STABLE:
                continue
            values = fano15(cfg).values
            nonzero = [v for v in values if v != 0]
            if len(nonzero) == 3 and len(set(nonzero)) == 1:
                return cfg
    if kind not in DEGENERATE_KINDS:
        raise InvalidInput(f"unknown degeneration kind {kind!r}")

    from .loci import DegenerationTag, classify_degeneration_n5
    want = {
        "CoplanarCenter": DegenerationTag.LINE_PLUS_CONIC,
        "CollinearCenter": DegenerationTag.LINE_PLUS_PLANE,
        "BiplanarCenter": DegenerationTag.THREE_LINES,
        "CenterAtWorldPoint": DegenerationTag.ALL_OF_P3,
        "GenericCenter": DegenerationTag.SMOOTH_CUBIC,
    }[kind]
    while True:
        x = _random_space_five(rng)
        a = _degenerate_center(rng, x, kind)
        if a is None:
            continue
        if classify_degeneration_n5(x, a) == want:
            return x, a


def _degenerate_center(rng: random.Random, x: Configuration, kind: str) -> ProjectivePoint | None:
    def combo(points: Sequence[ProjectivePoint]):
        cs = [rng.randint(-9, 9) for _ in points]
        if not any(cs):
            return None
        coords = [sum(c * p[i] for c, p in zip(cs, points)) for i in range(4)]
        return ProjectivePoint(coords) if any(coords) else None

    if kind == "CenterAtWorldPoint":
        return x[1]
    if kind == "GenericCenter":
        return ProjectivePoint(_random_point(rng, 3, 9))
    if kind == "CollinearCenter":
        a = combo(x.points[:2])
        return a if a is not None and a not in x.points else None
    if kind == "CoplanarCenter":
        a = combo(x.points[:3])
        if a is None or any(on_line(a, x[i], x[j]) for i, j in combinations(range(5), 2)):
            return None
        return a
    if kind == "BiplanarCenter":
        # a point of <x1,x2,x3> intersect <x1,x4,x5>, away from lines and points
        mat = [[x[1][i], x[2][i], -x[0][i], -x[3][i], -x[4][i]] for i in range(4)]
        kernel = linalg.kernel_basis(mat)
        if not kernel:
            return None
        s, t = kernel[0][0], kernel[0][1]
        coords = [s * x[1][i] + t * x[2][i] for i in range(4)]
        if not any(coords):
            return None
        q = ProjectivePoint(coords)
        a = combo([x[0], q])
        if a is None or any(on_line(a, x[i], x[j]) for i, j in combinations(range(5), 2)):
            return None
        return a
    return None

"""The invariant lambda and Mather mld at closed points of affine toric
varieties.

For a full-dimensional pointed cone with torus-fixed point x, the invariant
is

    lambda(x) = min over interior lattice points a of cost(a) - n,

where cost(a) is the minimum of sum_i <a, u_i> over all linearly
independent n-element subsets {u_1, ..., u_n} of the dual semigroup; the
minimum is always computed over Hilbert-basis elements, since any optimal
u_i is irreducible.  The Mather minimal log discrepancy is lambda + dim X.

Search certification.  Every pairing <a, u> with a interior and u a nonzero
semigroup element is a positive integer, so cost(a) >= n and each term of
an optimal spanning set is at most cost(a) - (n - 1).  Writing the global
minimizer a* as a nonnegative combination of at most n independent
primitive extreme rays (Caratheodory), each coefficient c_v satisfies
c_v <= <u, a*> <= cost(a*) for the optimal u that pairs positively with v.
Hence for any bound B >= cost(a*), the minimizer lies in the coordinate box
of the zonotope {sum_v c_v v : 0 <= c_v <= B}.  The search scans that box
for increasing B starting at the lower bound n; as soon as some interior
point a in the box has cost(a) <= B, the box already contains every
candidate at least as good, so the scan minimum is the global minimum.  The
sum of the extreme rays caps B, so the iteration terminates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .cones import Cone, ConeError, FaceSpec, dual_cone, face_cone
from .cones import has_isolated_fixed_point, is_simplicial, is_smooth, resolve_face
from .cones import split_torus_factor
from .hilbert import HilbertBasis, hilbert_basis
from .lattice import (
    LatticeError,
    LimitError,
    RationalPolytope,
    adjugate,
    as_vector,
    determinant,
    enumerate_lattice_points,
    pairing,
    rank_of,
    vec_neg,
)


@dataclass(frozen=True)
class SpanningWitness:
    """An interior point with a spanning set attaining its pairing cost."""

    point: tuple[int, ...]
    value: int
    chosen_set: tuple[tuple[int, ...], ...]

    def sort_key(self):
        return (self.value, self.point, self.chosen_set)


@dataclass(frozen=True)
class OrbitDimension:
    """Dimension of a jet orbit, exact or bracketed below the threshold."""

    exact: bool
    lower: int
    upper: int
    cost: int
    threshold: int

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError("orbit dimension is only known as an interval")
        return self.lower


@dataclass(frozen=True)
class ToricMldReport:
    lambda_value: int
    mather_mld: int
    witness: SpanningWitness
    search_bound_used: int
    fast_path: str
    torus_factor_rank: int
    face_reduced_from: tuple[int, ...] | None


def spanning_cost_greedy(a, hb: HilbertBasis) -> SpanningWitness:
    """Greedy minimum of sum <a, u_i> over spanning subsets of the basis.

    Repeatedly picks the basis element of smallest pairing (ties broken by
    lexicographic order) outside the span of the elements already chosen.
    The greedy value equals the true minimum: an exchange argument swaps
    any optimal set, element by element, into the greedy one without
    increasing the total.
    """
    n = hb.rank
    a = as_vector(a, n)
    if not hb.is_interior_point(a):
        raise LatticeError("spanning cost needs an interior lattice point")
    ranked = sorted(hb.elements, key=lambda u: (pairing(u, a), u))
    chosen: list[tuple[int, ...]] = []
    for u in ranked:
        if rank_of(chosen + [u]) > len(chosen):
            chosen.append(u)
            if len(chosen) == n:
                break
    if len(chosen) < n:
        raise LatticeError("basis does not span; cone cannot be full-dimensional")
    value = sum(pairing(u, a) for u in chosen)
    return SpanningWitness(point=a, value=value, chosen_set=tuple(sorted(chosen)))


@lru_cache(maxsize=128)
def _independent_subsets(elements, n):
    """All rank-n subsets of the basis elements, cached per basis."""
    return tuple(
        combo
        for combo in itertools.combinations(elements, n)
        if rank_of(combo) == n
    )


def spanning_cost_bruteforce(a, hb: HilbertBasis, max_subsets=1_000_000) -> SpanningWitness:
    """Exhaustive minimum over all spanning subsets; the greedy oracle."""
    n = hb.rank
    a = as_vector(a, n)
    if not hb.is_interior_point(a):
        raise LatticeError("spanning cost needs an interior lattice point")
    s = len(hb.elements)
    count = 1
    for i in range(n):
        count = count * (s - i) // (i + 1)
    if count > max_subsets:
        raise LimitError(
            f"{count} subsets exceed the guard ({max_subsets}); use the greedy form"
        )
    best = None
    for combo in _independent_subsets(hb.elements, n):
        value = sum(pairing(u, a) for u in combo)
        cand = SpanningWitness(point=a, value=value, chosen_set=tuple(sorted(combo)))
        if best is None or cand.sort_key() < best.sort_key():
            best = cand
    if best is None:
        raise LatticeError("basis does not span; cone cannot be full-dimensional")
    return best


def optimal_spanning_sets(a, hb: HilbertBasis, max_subsets=1_000_000):
    """All spanning subsets attaining the minimum cost at a."""
    best = spanning_cost_bruteforce(a, hb, max_subsets)
    out = []
    for combo in _independent_subsets(hb.elements, hb.rank):
        if sum(pairing(u, a) for u in combo) == best.value:
            out.append(tuple(sorted(combo)))
    return best.value, out


def _zonotope_box_polytope(cone: Cone, bound: int) -> RationalPolytope:
    """Interior points of the cone inside the box of {sum c_v v : 0<=c_v<=B}."""
    n = cone.ambient_rank
    _, dual_rays = cone.dual_pair
    ineqs = [(r, 1) for r in dual_rays]  # strict interior for lattice points
    for j in range(n):
        lo = bound * sum(min(0, v[j]) for v in cone.generators)
        hi = bound * sum(max(0, v[j]) for v in cone.generators)
        e = tuple(1 if k == j else 0 for k in range(n))
        ineqs.append((e, lo))
        ineqs.append((vec_neg(e), -hi))
    return RationalPolytope(n, tuple(ineqs))


def _fast_path_witness(cone: Cone):
    """Explicit certificate that lambda = 0 for the structured fast paths.

    Adapted coordinates send a smooth facet to the first n-1 unit vectors
    and shear the last ray into the box 0 <= a_i < t; the rows of the
    combined unimodular map are then dual-semigroup elements pairing to 1
    with the preimage of the all-ones point.  Everything is verified in the
    original coordinates before being returned.
    """
    n = cone.ambient_rank
    rays = list(cone.generators)
    if n == 1:
        return SpanningWitness(point=rays[0], value=1, chosen_set=(rays[0],))
    facet = rays[: n - 1]
    matrix = [list(r) for r in facet]
    # complete the facet basis to a basis of the ambient lattice
    try:
        cof = _primitive_cofactor(matrix, n)
        w = _solve_bezout(cof)
    except LatticeError:
        return None
    base = [list(v) for v in facet] + [list(w)]
    det = determinant(base)
    if det == 0:
        return None
    if det < 0:
        base[-1] = [-x for x in base[-1]]
    if abs(determinant(base)) != 1:
        return None

    def coordinate_rows(b):
        # functional rows of the map sending the basis rows of b to unit vectors
        inv = _integer_inverse([list(col) for col in zip(*b)])
        return [list(r) for r in inv]

    change = coordinate_rows(base)
    last = [sum(change[i][j] * rays[-1][j] for j in range(n)) for i in range(n)]
    t = last[-1]
    if t < 0:
        # flip the complement direction instead
        base[-1] = [-x for x in base[-1]]
        change = coordinate_rows(base)
        last = [sum(change[i][j] * rays[-1][j] for j in range(n)) for i in range(n)]
        t = last[-1]
    if t <= 0:
        return None
    # shear the new coordinates so the last ray has 0 <= a_i < t
    for i in range(n - 1):
        q = last[i] // t
        if q:
            change[i] = [x - q * y for x, y in zip(change[i], change[-1])]
    witness_set = tuple(sorted(tuple(row) for row in change))
    point = _integer_inverse([list(r) for r in change])
    a = tuple(sum(point[i][j] for j in range(n)) for i in range(n))
    # verify before trusting the construction
    if not cone.contains(a, strict=True):
        return None
    for u in witness_set:
        if any(pairing(u, v) < 0 for v in cone.generators):
            return None
    if sum(pairing(u, a) for u in witness_set) != n:
        return None
    if rank_of(witness_set) != n:
        return None
    return SpanningWitness(point=a, value=n, chosen_set=witness_set)


def _primitive_cofactor(matrix, n):
    """Vector of maximal minors of an (n-1) x n matrix, as a linear form."""
    cof = []
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in matrix]
        cof.append((-1) ** j * determinant(minor))
    return tuple(cof)


def _solve_bezout(c):
    """Integer vector w with c . w = 1 for a primitive integer vector c."""
    n = len(c)
    g = 0
    gw: list[int] = [0] * n
    for i, x in enumerate(c):
        if x == 0:
            continue
        if g == 0:
            g = abs(x)
            gw = [0] * n
            gw[i] = 1 if x > 0 else -1
            continue
        # extended gcd of g and x
        a, b = g, abs(x)
        sa, sb = list(gw), [0] * n
        sb[i] = 1 if x > 0 else -1
        while b:
            q = a // b
            a, b = b, a - q * b
            sa, sb = sb, [p - q * r for p, r in zip(sa, sb)]
        g, gw = a, sa
    if g != 1:
        raise LatticeError("cofactor vector is not primitive; facet is not smooth")
    return tuple(gw)


def _integer_inverse(matrix):
    """Exact inverse of a unimodular integer matrix."""
    n = len(matrix)
    det = determinant(matrix)
    if abs(det) != 1:
        raise LatticeError("matrix is not unimodular")
    adj = adjugate(matrix)
    return [[det * adj[i][j] for j in range(n)] for i in range(n)]


def minimize_spanning_cost(
    cone: Cone,
    use_fast_paths: bool = True,
    bound_override: int | None = None,
    max_points: int | None = None,
) -> ToricMldReport:
    """lambda and mld-hat at the torus-fixed point of a full-dimensional cone."""
    n = cone.ambient_rank
    if not cone.is_full_dimensional:
        raise ConeError("split off the torus factor before minimizing")

    if use_fast_paths:
        fast = None
        if is_smooth(cone):
            fast = "smooth"
        elif n == 2:
            fast = "surface"
        elif is_simplicial(cone) and has_isolated_fixed_point(cone):
            fast = "simplicial_isolated"
        if fast is not None:
            witness = _fast_path_witness(cone)
            if witness is not None:
                return ToricMldReport(
                    lambda_value=0,
                    mather_mld=n,
                    witness=witness,
                    search_bound_used=n,
                    fast_path=fast,
                    torus_factor_rank=0,
                    face_reduced_from=None,
                )

    hb = hilbert_basis(dual_cone(cone))
    a0 = tuple(sum(col) for col in zip(*cone.generators))
    incumbent = spanning_cost_greedy(a0, hb)
    cap = incumbent.value if bound_override is None else bound_override
    best = incumbent
    bound = n
    evaluated: dict[tuple[int, ...], SpanningWitness] = {a0: incumbent}
    while True:
        region = _zonotope_box_polytope(cone, bound)
        if max_points is not None:
            volume = 1
            for j in range(n):
                width = bound * sum(abs(v[j]) for v in cone.generators) + 1
                volume *= width
            if volume > max_points:
                raise LimitError(
                    f"search box of about {volume} points exceeds the limit "
                    f"({max_points})"
                )
        for a in enumerate_lattice_points(region):
            if a in evaluated:
                continue
            evaluated[a] = spanning_cost_greedy(a, hb)
        scan_best = min(evaluated.values(), key=lambda w: w.sort_key())
        if scan_best.sort_key() < best.sort_key():
            best = scan_best
        if best.value <= bound or bound >= cap:
            break
        bound += 1
    return ToricMldReport(
        lambda_value=best.value - n,
        mather_mld=best.value,
        witness=best,
        search_bound_used=bound,
        fast_path="none",
        torus_factor_rank=0,
        face_reduced_from=None,
    )


def orbit_dimension(a, m: int, hb: HilbertBasis, max_subsets=1_000_000) -> OrbitDimension:
    """Dimension of the jet orbit through the order map of a at level m.

    Exact when m reaches the largest pairing in some optimal spanning set;
    otherwise only the bracket [ (m+1)n - cost, (m+1)n - m ] is known.
    Any optimal set qualifies for the threshold: ordering an optimal set by
    pairing value, a cheaper element outside each partial span could be
    exchanged in and would lower the total, so every optimal set already
    satisfies the greedy minimality property that the exactness argument
    needs step by step.
    """
    if m < 1:
        raise ValueError("jet level m must be at least 1")
    n = hb.rank
    value, optima = optimal_spanning_sets(a, hb, max_subsets)
    threshold = min(max(pairing(u, a) for u in combo) for combo in optima)
    exact = m >= threshold
    lower = (m + 1) * n - value
    upper = lower if exact else (m + 1) * n - m
    return OrbitDimension(
        exact=exact, lower=lower, upper=upper, cost=value, threshold=threshold
    )


def mld_at_point(
    cone: Cone,
    face: FaceSpec | None = None,
    use_fast_paths: bool = True,
    bound_override: int | None = None,
    max_points: int | None = None,
) -> ToricMldReport:
    """lambda and mld-hat at the distinguished point of a face of the cone.

    The face is reduced to a full-dimensional cone in the lattice it spans
    and any torus factor is split off; lambda is unchanged by both
    reductions while mld-hat keeps the ambient dimension of the original
    variety.
    """
    n_original = cone.ambient_rank
    face_indices: tuple[int, ...] | None = None
    working = cone
    if face is not None:
        face_indices = resolve_face(cone, face)
        if len(face_indices) == 0:
            # the zero face: its distinguished point lies in the dense torus,
            # a smooth point
            witness = SpanningWitness(point=(), value=0, chosen_set=())
            return ToricMldReport(
                lambda_value=0,
                mather_mld=n_original,
                witness=witness,
                search_bound_used=0,
                fast_path="smooth",
                torus_factor_rank=n_original,
                face_reduced_from=face_indices,
            )
        working = face_cone(cone, FaceSpec(generator_subset=face_indices))
    reduced, torus_rank = split_torus_factor(working)
    report = minimize_spanning_cost(
        reduced,
        use_fast_paths=use_fast_paths,
        bound_override=bound_override,
        max_points=max_points,
    )
    return ToricMldReport(
        lambda_value=report.lambda_value,
        mather_mld=report.lambda_value + n_original,
        witness=report.witness,
        search_bound_used=report.search_bound_used,
        fast_path=report.fast_path,
        torus_factor_rank=torus_rank,
        face_reduced_from=face_indices,
    )

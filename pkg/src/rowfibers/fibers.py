"""Fibers of rational maps: the four-ideal chain at a point, analytic
spread, birationality certificates, and the power / row-ideal machinery.

A rational map P^n -> P^r is given by an equigenerated ideal I whose chosen
minimal generators span the defining space of forms.  For a target point q
the four ideals

    subspace ideal  <=  row ideal  <=  correspondence fiber  <=  morphism fiber

are computed exactly; "general point" arguments are realized by seeded
random sampling over a large prime field, with bounded retries and loud
failures (never silent resampling past the bound).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .ideals import UNIT_CODIM, Ideal
from .polyring import PolyRing, Polynomial
from .syzygy import (
    PresentationMatrix,
    minimize_columns,
    rank_modulo_linear_ideal,
)
from .groebner import syzygy_generators

__all__ = [
    "MapContext",
    "ProjectivePoint",
    "FiberReport",
    "HksResult",
    "PointPresentation",
    "BasePointError",
    "SamplingError",
    "ConsistencyError",
]

RETRY_BOUND = 100
DEFAULT_MAX_POWER = 6


class BasePointError(ValueError):
    """The map is undefined at the requested point (it lies in V(I))."""


class SamplingError(RuntimeError):
    """Random sampling exhausted its retry bound."""


class ConsistencyError(RuntimeError):
    """Two routes that must agree disagreed (e.g. sampling vs elimination)."""


class ProjectivePoint:
    """A point of projective space; equality is up to a nonzero scalar."""

    def __init__(self, field, coords: Sequence):
        coords = tuple(field.from_int(c) if isinstance(c, int) else c for c in coords)
        if all(field.is_zero(c) for c in coords):
            raise ValueError("projective point must have a nonzero coordinate")
        self.field = field
        self.coords = coords

    def normalized(self) -> tuple:
        """Affine representative: scaled so the first nonzero coordinate is 1."""
        for c in self.coords:
            if not self.field.is_zero(c):
                inv = self.field.inv(c)
                return tuple(self.field.mul(inv, x) for x in self.coords)
        raise AssertionError("unreachable: zero point")

    def __eq__(self, other):
        return (
            isinstance(other, ProjectivePoint)
            and self.field == other.field
            and self.normalized() == other.normalized()
        )

    def __hash__(self):
        return hash((self.field, self.normalized()))

    def __repr__(self):
        return "(" + ":".join(self.field.coeff_str(c) for c in self.coords) + ")"

    @classmethod
    def standard(cls, field, dim_plus_one: int, index: int) -> "ProjectivePoint":
        coords = [field.zero] * dim_plus_one
        coords[index] = field.one
        return cls(field, coords)


class MapContext:
    """Validated rational-map datum for phi: P^n -> P^r.

    Holds the minimal homogeneous generator basis g_0..g_r of the space of
    forms, their common degree, and a seed from which all randomness in
    derived computations flows deterministically.
    """

    def __init__(self, I: Ideal, seed: int = 0):
        if I.is_zero():
            raise ValueError("the zero ideal defines no rational map")
        if not I.is_homogeneous():
            raise ValueError("the ideal must be homogeneous")
        gens = I.minimal_generators()
        degrees = {g.total_degree() for g in gens}
        if len(degrees) != 1:
            raise ValueError(f"generators must share one degree, found {sorted(degrees)}")
        codim = I.codimension()
        if codim == UNIT_CODIM or codim < 2:
            raise ValueError(
                f"ideal must have codimension >= 2 (got {codim}); "
                "remove common divisors of the forms first"
            )
        self.ring = I.ring
        self.generators = tuple(gens)
        self.ideal = Ideal(self.ring, gens)
        self.degree = degrees.pop()
        self.n = self.ring.nvars - 1
        self.r = len(gens) - 1
        self.seed = seed

    def rng(self, label: str) -> random.Random:
        """Deterministic per-operation RNG split from the context seed."""
        return random.Random(f"{self.seed}/{label}")

    def __repr__(self):
        return (
            f"MapContext(P^{self.n} -> P^{self.r}, degree {self.degree}, "
            f"seed {self.seed})"
        )

    # -- point plumbing -----------------------------------------------------

    def random_point(self, rng: random.Random) -> ProjectivePoint:
        F = self.ring.field
        for _ in range(RETRY_BOUND):
            if F.p:
                coords = [rng.randrange(F.p) for _ in range(self.n + 1)]
            else:
                coords = [rng.randint(-99, 99) for _ in range(self.n + 1)]
            if any(coords):
                return ProjectivePoint(F, [F.from_int(c) for c in coords])
        raise SamplingError("could not sample a nonzero point")

    def random_source_point(self, rng: random.Random) -> ProjectivePoint:
        """A random point of P^n avoiding the base locus V(I)."""
        F = self.ring.field
        for _ in range(RETRY_BOUND):
            p = self.random_point(rng)
            vals = [g.evaluate(p.coords) for g in self.generators]
            if any(not F.is_zero(v) for v in vals):
                return p
        raise SamplingError(
            f"no point off V(I) found in {RETRY_BOUND} draws; field too small or I too fat"
        )

    def evaluate_map(self, p: ProjectivePoint) -> ProjectivePoint:
        """phi(p) = (g_0(p) : ... : g_r(p)); errors on base points."""
        F = self.ring.field
        if len(p.coords) != self.n + 1:
            raise ValueError("point lives in the wrong projective space")
        vals = [g.evaluate(p.coords) for g in self.generators]
        if all(F.is_zero(v) for v in vals):
            raise BasePointError(f"{p!r} lies in the base locus V(I)")
        return ProjectivePoint(F, vals)

    # -- the four ideals ----------------------------------------------------

    def subspace_ideal(self, q: ProjectivePoint) -> Ideal:
        """I_q, generated by the codimension-1 subspace of forms killed by q.

        Deterministic kernel basis: with pivot j the first nonzero q_j, the
        combinations q_j*g_i - q_i*g_j for i != j.
        """
        F = self.ring.field
        if len(q.coords) != self.r + 1:
            raise ValueError("target point has the wrong coordinate count")
        qc = q.coords
        j = next(k for k, c in enumerate(qc) if not F.is_zero(c))
        gens = []
        for i in range(self.r + 1):
            if i == j:
                continue
            gens.append(self.generators[i].scale(qc[j]) - self.generators[j].scale(qc[i]))
        return Ideal(self.ring, gens)

    def row_ideal(self, q: ProjectivePoint) -> Ideal:
        """I_q : I, the generalized row ideal at q."""
        return self.subspace_ideal(q).colon(self.ideal)

    def morphism_fiber_ideal(self, q: ProjectivePoint) -> Ideal:
        """I_q : I^infty, the saturated ideal of the fiber closure over q."""
        return self.subspace_ideal(q).saturate(self.ideal)

    def correspondence_fiber_ideal(
        self, q: ProjectivePoint, max_power: int = DEFAULT_MAX_POWER
    ):
        """The union of I_q*I^(i-1) : I^i, with a 2-step confirmation window.

        Returns (ideal, stabilized_at, confirmed).  The chain is checked to
        be increasing; a single repeat is not trusted, so stabilization is
        declared only after J_i = J_(i+1) = J_(i+2), and hitting max_power
        without that window yields confirmed=False.
        """
        if max_power < 2:
            raise ValueError("max_power must be >= 2")
        I = self.ideal
        numerator = self.subspace_ideal(q)
        chain = []
        power = I
        for i in range(1, max_power + 1):
            numerator = Ideal(self.ring, numerator.minimal_generators())
            J_i = numerator.colon(power)
            if chain and not J_i.contains_ideal(chain[-1]):
                raise ConsistencyError(
                    f"correspondence chain failed to increase at step {i}"
                )
            chain.append(J_i)
            if J_i.is_unit():
                # the chain is increasing and capped by the unit ideal, so
                # this is exact stabilization, no confirmation window needed
                return J_i, i, True
            if len(chain) >= 3 and chain[-1].equals(chain[-2]) and chain[-2].equals(chain[-3]):
                return chain[-1], i - 2, True
            numerator = numerator * I
            power = Ideal(self.ring, (power * I).minimal_generators())
        return chain[-1], max_power, False

    # -- analytic spread ----------------------------------------------------

    def special_fiber_dimension(self) -> int:
        """Analytic spread via elimination: dim k[T]/ker(T_i -> g_i).

        This is the Krull dimension of the coordinate ring of the image cone
        (the special fiber ring); serves as the elimination oracle that the
        sampling route is checked against.
        """
        names = list(self.ring.variables)
        tnames = []
        for i in range(self.r + 1):
            name = f"T{i}"
            while name in names or name in tnames:
                name += "_"
            tnames.append(name)
        big = PolyRing(self.ring.field, names + tnames, self.ring.default_order)
        pad = (0,) * (self.r + 1)
        ker_gens = []
        for i, g in enumerate(self.generators):
            lifted = Polynomial(big, {m + pad: c for m, c in g.coeffs.items()})
            ker_gens.append(big.gen(self.ring.nvars + i) - lifted)
        kernel = Ideal(big, ker_gens).eliminate(self.ring.nvars)
        if kernel.is_zero():
            return self.r + 1
        dim = kernel.dimension()
        assert dim != UNIT_CODIM
        return dim

    def analytic_spread(self, trials: int = 3):
        """Analytic spread by general-point sampling: 1 + codim(I_phi(p) : I^inf).

        Returns (value, per-trial codimensions); the maximum over trials is
        cross-checked against the elimination oracle, and any disagreement
        raises instead of being averaged away.
        """
        if trials < 1:
            raise ValueError("need at least one trial")
        rng = self.rng("analytic_spread")
        codims = []
        for _ in range(trials):
            p = self.random_source_point(rng)
            K = self.subspace_ideal(self.evaluate_map(p)).saturate(self.ideal)
            c = K.codimension()
            if c == UNIT_CODIM:
                raise ConsistencyError(
                    "sampled fiber ideal is the unit ideal; the fiber through "
                    "a source point cannot be empty"
                )
            codims.append(c)
        value = 1 + max(codims)
        oracle = self.special_fiber_dimension()
        if value != oracle:
            raise ConsistencyError(
                f"analytic spread mismatch: sampling gives {value}, "
                f"elimination oracle gives {oracle}"
            )
        return value, codims

    def spread_lower_bound(self, q: ProjectivePoint) -> Optional[int]:
        """1 + codim(I_q : I^infty) when that ideal is proper, else None."""
        fiber = self.morphism_fiber_ideal(q)
        if fiber.is_unit():
            return None
        return 1 + fiber.codimension()

    # -- HKS bound ----------------------------------------------------------

    def hks_lower_bound(self, A: PresentationMatrix, q: ProjectivePoint) -> "HksResult":
        """Lower bound on the analytic spread from a (partial) syzygy matrix.

        Requires every column of A to be a syzygy on this context's
        generators.  Applicable only when the generalized-row ideal A_q is
        linear and proper (hence prime): if the rank of A modulo A_q is r,
        the bound 1 + codim(A_q) holds.
        """
        if len(A.generators) != self.r + 1:
            raise ValueError("matrix row count does not match the generator count")
        for j, col in enumerate(A.columns):
            acc = self.ring.zero()
            for g, e in zip(self.generators, col):
                acc = acc + g * e
            if not acc.is_zero():
                raise ValueError(f"column {j} is not a syzygy of the map's generators")
        A_q = Ideal(self.ring, [p for p in A.generalized_row(q.coords) if not p.is_zero()])
        if A_q.is_zero():
            return HksResult(False, None, None, "generalized row is zero")
        if A_q.is_unit():
            return HksResult(False, None, None, "generalized-row ideal is the unit ideal")
        if not A_q.is_linear():
            return HksResult(
                False, None, None,
                "generalized-row ideal is not linear; primality unsupported",
            )
        rank = rank_modulo_linear_ideal(A, A_q)
        if rank != self.r:
            return HksResult(False, None, rank, f"rank {rank} != r = {self.r}")
        return HksResult(True, 1 + A_q.codimension(), rank, "ok")

    # -- birationality ------------------------------------------------------

    def birationality_certificate(self, q: ProjectivePoint) -> bool:
        """True if the row ideal at q is linear of codimension n and does not
        contain I -- a sufficient certificate for birationality onto the image."""
        K = self.row_ideal(q)
        return (
            K.is_linear()
            and not K.is_unit()
            and K.codimension() == self.n
            and not K.contains_ideal(self.ideal)
        )

    def birationality_test(self, trials: int = 3):
        """General-point birationality: the map is birational onto its image
        iff the general morphism fiber ideal is linear of codimension n.

        All trials must agree; disagreement raises a ConsistencyError
        (enlarge trials / inspect the map) rather than being voted away.
        """
        if trials < 1:
            raise ValueError("need at least one trial")
        rng = self.rng("birationality")
        verdicts = []
        witnesses = []
        for _ in range(trials):
            p = self.random_source_point(rng)
            K = self.subspace_ideal(self.evaluate_map(p)).saturate(self.ideal)
            ok = K.is_linear() and not K.is_unit() and K.codimension() == self.n
            verdicts.append(ok)
            witnesses.append((p, K))
        if len(set(verdicts)) != 1:
            raise ConsistencyError(
                "birationality trials disagree; sampled points are not in "
                "general position, enlarge trials"
            )
        p, K = witnesses[0]
        certificate = {
            "point": p,
            "fiber_ideal": K,
            "linear": K.is_linear(),
            "codimension": K.codimension(),
            "trials": trials,
        }
        return verdicts[0], certificate

    # -- powers -------------------------------------------------------------

    def power_context(self, d: int) -> "MapContext":
        """Context of the map defined by the d-th power of the form space."""
        if d < 1:
            raise ValueError("power must be >= 1")
        if d == 1:
            return self
        return MapContext(self.ideal.power(d), seed=self.seed)

    def power_row_ideal(self, d: int, p: ProjectivePoint) -> Ideal:
        """Row ideal of the power map at phi_d(p): I_phi(p)*I^(d-1) : I^d."""
        if d < 1:
            raise ValueError("power must be >= 1")
        q = self.evaluate_map(p)
        I_q = self.subspace_ideal(q)
        if d == 1:
            return I_q.colon(self.ideal)
        numerator = Ideal(
            self.ring, (I_q * self.ideal.power(d - 1)).minimal_generators()
        )
        denominator = Ideal(self.ring, self.ideal.power(d).minimal_generators())
        return numerator.colon(denominator)

    def point_presentation(
        self, d: int = 1, points: Optional[Sequence[ProjectivePoint]] = None
    ) -> "PointPresentation":
        """A presentation of I^d whose rows correspond to fibers through points.

        Samples (or accepts) N+1 points off V(I) whose evaluation matrix E on
        the power basis is invertible, rebases the generators so that
        h_i(p_k) = delta_ik, and transforms a minimal syzygy matrix into that
        basis; row i then has row ideal equal to power_row_ideal at p_i.
        """
        ctx_d = self.power_context(d)
        basis = list(ctx_d.generators)
        N1 = len(basis)
        F = self.ring.field
        rng = self.rng(f"point_presentation/{d}")
        if points is None:
            points = []
            rows = []
            draws = 0
            while len(points) < N1:
                draws += 1
                if draws > RETRY_BOUND * N1:
                    raise SamplingError(
                        "could not complete an invertible evaluation matrix; "
                        "field too small"
                    )
                p = self.random_source_point(rng)
                aff = p.normalized()
                row = [f.evaluate(aff) for f in basis]
                if _rank_extends(F, rows, row):
                    points.append(p)
                    rows.append(row)
            E = rows
        else:
            points = list(points)
            if len(points) != N1:
                raise ValueError(f"need exactly {N1} points, got {len(points)}")
            E = [[f.evaluate(p.normalized()) for f in basis] for p in points]
            if _field_rank(F, [r[:] for r in E]) != N1:
                raise ValueError("evaluation matrix of the supplied points is singular")
        # h = (E^T)^{-1} f  gives  h_i(p_k) = delta_ik
        ET_inv = _field_inverse(F, [[E[k][i] for k in range(N1)] for i in range(N1)])
        new_gens = []
        for i in range(N1):
            acc = self.ring.zero()
            for j in range(N1):
                if not F.is_zero(ET_inv[i][j]):
                    acc = acc + basis[j].scale(ET_inv[i][j])
            new_gens.append(acc)
        columns = minimize_columns(basis, syzygy_generators(basis))
        new_columns = []
        for col in columns:
            new_col = []
            for i in range(N1):
                acc = self.ring.zero()
                for j in range(N1):
                    if not F.is_zero(E[i][j]):
                        acc = acc + col[j].scale(E[i][j])
                new_col.append(acc)
            new_columns.append(tuple(new_col))
        matrix = PresentationMatrix(new_gens, new_columns)
        return PointPresentation(matrix, tuple(points), d)

    # -- linear generalized rows --------------------------------------------

    def minimal_presentation_matrix(self) -> PresentationMatrix:
        """Minimal presentation over this context's chosen generator basis."""
        columns = minimize_columns(
            list(self.generators), syzygy_generators(list(self.generators))
        )
        return PresentationMatrix(self.generators, columns)

    def linear_generalized_rows_check(
        self, samples: int = 20, matrix: Optional[PresentationMatrix] = None
    ):
        """Monte-Carlo search for a non-linear generalized row ideal.

        Tests all standard basis points, random target points, and images of
        random source points.  A failure is an exact counterexample; a pass
        is probabilistic only.
        """
        if samples < 1:
            raise ValueError("need at least one sample")
        A = matrix if matrix is not None else self.minimal_presentation_matrix()
        F = self.ring.field
        rng = self.rng("linear_rows")
        candidates = [
            ProjectivePoint.standard(F, A.row_count, i) for i in range(A.row_count)
        ]
        for _ in range(samples):
            coords = [F.from_int(rng.randrange(F.p)) if F.p else F.from_int(rng.randint(-99, 99)) for _ in range(A.row_count)]
            if any(not F.is_zero(c) for c in coords):
                candidates.append(ProjectivePoint(F, coords))
        if A.row_count == self.r + 1:
            for _ in range(samples):
                p = self.random_source_point(rng)
                candidates.append(self.evaluate_map(p))
        for q in candidates:
            ideal = Ideal(
                self.ring, [e for e in A.generalized_row(q.coords) if not e.is_zero()]
            )
            if not ideal.is_linear():
                return "fail", q
        return "pass", None

    # -- full fiber report ---------------------------------------------------

    def fiber_report(
        self, q: ProjectivePoint, max_power: int = DEFAULT_MAX_POWER
    ) -> "FiberReport":
        I_q = self.subspace_ideal(q)
        row = I_q.colon(self.ideal)
        corr, stabilized_at, confirmed = self.correspondence_fiber_ideal(q, max_power)
        morph = I_q.saturate(self.ideal)
        chain_ok = (
            row.contains_ideal(I_q)
            and corr.contains_ideal(row)
            and morph.contains_ideal(corr)
        )
        return FiberReport(
            point=q,
            subspace=I_q,
            row=row,
            correspondence=corr,
            stabilized_at=stabilized_at,
            confirmed=confirmed,
            morphism=morph,
            chain_verified=chain_ok,
        )


@dataclass(frozen=True)
class HksResult:
    applicable: bool
    bound: Optional[int]
    rank: Optional[int]
    reason: str


@dataclass(frozen=True)
class PointPresentation:
    matrix: PresentationMatrix
    points: tuple
    power: int

    def row_ideal(self, i: int) -> Ideal:
        ring = self.matrix.ring
        return Ideal(ring, [e for e in self.matrix.row(i) if not e.is_zero()])


@dataclass(frozen=True)
class FiberReport:
    point: ProjectivePoint
    subspace: Ideal
    row: Ideal
    correspondence: Ideal
    stabilized_at: int
    confirmed: bool
    morphism: Ideal
    chain_verified: bool

    def codimensions(self) -> dict:
        return {
            "row": self.row.codimension(),
            "correspondence": self.correspondence.codimension(),
            "morphism": self.morphism.codimension(),
        }

    def linearity(self) -> dict:
        return {
            "row": self.row.is_linear(),
            "correspondence": self.correspondence.is_linear(),
            "morphism": self.morphism.is_linear(),
        }


# ---------------------------------------------------------------------------
# Small exact linear algebra over the coefficient field
# ---------------------------------------------------------------------------


def _field_rank(F, rows) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not F.is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not F.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        rank += 1
        r += 1
        if r == len(rows):
            break
    return rank


def _rank_extends(F, rows, candidate) -> bool:
    """True if appending ``candidate`` increases the row rank."""
    return _field_rank(F, rows + [candidate]) == len(rows) + 1


def _field_inverse(F, M):
    n = len(M)
    aug = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(M)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if not F.is_zero(aug[i][c])), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = F.inv(aug[r][c])
        aug[r] = [F.mul(inv, x) for x in aug[r]]
        for i in range(n):
            if i != r and not F.is_zero(aug[i][c]):
                factor = aug[i][c]
                aug[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(aug[i], aug[r])]
        r += 1
    return [row[n:] for row in aug]

"""Degree-one tangent data of nilpotent extensions: exact logarithms of
unipotent matrices, the log-trace map into relative HC_0, and tangent tables
over Artinian test bases.

For a surjective f : A -> B with nilpotent kernel I and a stabilisation size
r, the map sends a unipotent u = 1 + m with m over I to the class of
trace(log u) in the degree-zero relative cyclic homology of f.  Everything is
finite and exact: logarithms are the truncated series, and all membership
tests (commutator-subspace defects, class comparisons) are exact rank checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebras import (
    Algebra,
    AlgebraMorphism,
    Ideal,
    augmentation_ideal,
    commutator_subspace,
    matrix_algebra,
    matrix_units_trace,
    tensor,
)
from .complexes import HomologySpace, Interval, cone
from .cyclic import hc_bicomplex, hc_homology
from .errors import NotNilpotent
from .excision import ExtensionData, comparison_map, relative_hc
from .complexes import is_quasi_iso
from .sparse import SparseMatrix, Subspace, Vector, vec_axpy

ONE = Fraction(1)

_MAX_NILPOTENCY = 128


def nilpotent_log(A: Algebra, nilpart: Vector) -> Vector:
    """log(1 + m) = sum (-1)^{k+1} m^k / k, finite because m is nilpotent."""
    out: Vector = {}
    power = dict(nilpart)
    k = 1
    while power:
        if k > _MAX_NILPOTENCY:
            raise NotNilpotent("element does not appear to be nilpotent")
        sign = ONE if k % 2 == 1 else -ONE
        vec_axpy(out, sign / k, power)
        power = A.mul_vec(power, nilpart)
        k += 1
    return out


def nilpotent_exp(A: Algebra, x: Vector) -> Vector:
    """exp(x) - 1 for nilpotent x (the constant term is left implicit)."""
    out: Vector = {}
    power = dict(x)
    factorial = 1
    k = 1
    while power:
        if k > _MAX_NILPOTENCY:
            raise NotNilpotent("element does not appear to be nilpotent")
        vec_axpy(out, Fraction(1, factorial), power)
        power = A.mul_vec(power, x)
        k += 1
        factorial *= k
    return out


@dataclass
class UnipotentElement:
    """1 + m with m in a nilpotent ideal of a unital ambient algebra."""

    ambient: Algebra
    nilpart: Vector

    def __post_init__(self):
        if not self.ambient.is_unital:
            from .algebras import unitalization

            plus, inc = unitalization(self.ambient)
            self.nilpart = inc.apply(self.nilpart)
            self.ambient = plus

    def log(self) -> Vector:
        return nilpotent_log(self.ambient, self.nilpart)

    def mul(self, other: "UnipotentElement") -> "UnipotentElement":
        m = dict(self.nilpart)
        vec_axpy(m, ONE, other.nilpart)
        vec_axpy(m, ONE, self.ambient.mul_vec(self.nilpart, other.nilpart))
        return UnipotentElement(self.ambient, m)

    def inverse(self) -> "UnipotentElement":
        out: Vector = {}
        power = {k: -c for k, c in self.nilpart.items()}
        k = 0
        while power:
            if k > _MAX_NILPOTENCY:
                raise NotNilpotent("element does not appear to be nilpotent")
            vec_axpy(out, ONE, power)
            power = self.ambient.mul_vec(power, {k2: -c for k2, c in self.nilpart.items()})
            k += 1
        return UnipotentElement(self.ambient, out)

    def conjugate_by(self, g: "UnipotentElement") -> "UnipotentElement":
        gi = g.inverse()
        m = dict(self.nilpart)
        # g (1 + m) g^{-1} = 1 + g m g^{-1}; expand (1+a) m (1+b) with b = gi.nilpart
        a, b = g.nilpart, gi.nilpart
        out = dict(m)
        vec_axpy(out, ONE, self.ambient.mul_vec(a, m))
        mb = self.ambient.mul_vec(m, b)
        vec_axpy(out, ONE, mb)
        vec_axpy(out, ONE, self.ambient.mul_vec(a, mb))
        return UnipotentElement(self.ambient, out)


# ---------------------------------------------------------------------------
# stabilised extensions and the log-trace map
# ---------------------------------------------------------------------------


class LogTraceProbe:
    """Shared machinery for the degree-one Chern data of an extension."""

    def __init__(self, ext: ExtensionData, r: int, D: int = 3, size_limit=None):
        if ext.ideal_dim and not ext.I_ad.is_nilpotent:
            raise NotNilpotent("kernel ideal must be nilpotent")
        self.ext = ext
        self.r = r
        A = ext.A_ad
        self.Am = matrix_algebra(A, r)
        self.ideal_basis = []
        for pos in range(r * r):
            for t in range(ext.ideal_dim):
                self.ideal_basis.append({pos * A.dim + t: ONE})
        self.commutators = Subspace(A.dim, commutator_subspace(A))
        bc_A = hc_bicomplex(A, D, size_limit)
        bc_B = hc_bicomplex(ext.B, D, size_limit)
        self.cone = cone(bc_A.induced_map(bc_B, ext.f_ad.matrix))
        self.b_offset = bc_B.total.dim(1)
        self.hs = HomologySpace(self.cone, 1)  # rel HC_0 = H_1 of the cone

    @property
    def rel_hc0_dim(self):
        return self.hs.dim

    def trace_log(self, u: UnipotentElement) -> Vector:
        return matrix_units_trace(self.ext.A_ad, self.r, u.log())

    def chern_class(self, u: UnipotentElement) -> Vector:
        """Class of trace(log u) in rel HC_0 (coordinates over representatives)."""
        v = self.trace_log(u)
        embedded = {self.b_offset + k: c for k, c in v.items()}
        return self.hs.classify(embedded)

    def unipotent(self, nilpart: Vector) -> UnipotentElement:
        return UnipotentElement(self.Am, nilpart)

    def generators(self):
        return [self.unipotent(v) for v in self.ideal_basis]

    def random_unipotent(self, rng: random.Random) -> UnipotentElement:
        m: Vector = {}
        for v in self.ideal_basis:
            c = rng.randint(-2, 2)
            if c:
                vec_axpy(m, Fraction(c), v)
        return self.unipotent(m)

    def defect_in_commutators(self, v: Vector) -> bool:
        return self.commutators.contains(v)


@dataclass
class Chern1Report:
    rel_hc0_dim: int
    image_rank: int
    surjective: bool
    homomorphism_ok: bool
    conjugation_ok: bool
    commutator_ok: bool
    samples: int
    seed: int

    @property
    def passed(self):
        return (
            self.surjective
            and self.homomorphism_ok
            and self.conjugation_ok
            and self.commutator_ok
        )

    def to_jsonable(self):
        return {
            "passed": self.passed,
            "rel_hc0_dim": self.rel_hc0_dim,
            "image_rank": self.image_rank,
            "surjective": self.surjective,
            "homomorphism_defects_in_commutators": self.homomorphism_ok,
            "conjugation_invariant": self.conjugation_ok,
            "vanishes_on_commutators": self.commutator_ok,
            "samples": self.samples,
            "seed": self.seed,
        }


def chern1(ext: ExtensionData, r: int, seed: int = 0, samples: int = 100,
           size_limit=None) -> Chern1Report:
    """Verify the log-trace map is a surjection (1 + M_r(I))^x -> rel HC_0:
    homomorphism defects and commutator values land in [A, A] (exact
    membership), conjugation invariance holds, and the generator classes span.
    """
    probe = LogTraceProbe(ext, r, size_limit=size_limit)
    rng = random.Random(seed)

    image = Subspace(probe.rel_hc0_dim)
    for u in probe.generators():
        image.add(probe.chern_class(u))
    hom_ok = True
    conj_ok = True
    comm_ok = True
    for _ in range(samples):
        u = probe.random_unipotent(rng)
        v = probe.random_unipotent(rng)
        image.add(probe.chern_class(u))
        uv = u.mul(v)
        defect = probe.trace_log(uv)
        vec_axpy(defect, -ONE, probe.trace_log(u))
        vec_axpy(defect, -ONE, probe.trace_log(v))
        if not probe.defect_in_commutators(defect):
            hom_ok = False
        g = probe.random_unipotent(rng)
        conj_defect = probe.trace_log(u.conjugate_by(g))
        vec_axpy(conj_defect, -ONE, probe.trace_log(u))
        if not probe.defect_in_commutators(conj_defect):
            conj_ok = False
        w = uv.mul(u.inverse()).mul(v.inverse())
        if not probe.defect_in_commutators(probe.trace_log(w)):
            comm_ok = False
    return Chern1Report(
        probe.rel_hc0_dim,
        image.rank,
        image.rank == probe.rel_hc0_dim,
        hom_ok,
        conj_ok,
        comm_ok,
        samples,
        seed,
    )


@dataclass
class K1ProbeReport:
    span_dim: int
    rel_hc0_dim: int
    contained: bool
    equal: bool
    samples: int
    seed: int

    def to_jsonable(self):
        return {
            "span_dim": self.span_dim,
            "rel_hc0_dim": self.rel_hc0_dim,
            "span_embeds": self.contained,
            "equal": self.equal,
            "samples": self.samples,
            "seed": self.seed,
        }


def k1_rel_probe(ext: ExtensionData, r: int, seed: int = 0, samples: int = 50,
                 size_limit=None) -> K1ProbeReport:
    """Dimension of the span of {trace(log u)} in I/(I cap [A, A]), compared
    against the relative HC_0 computed homologically."""
    probe = LogTraceProbe(ext, r, size_limit=size_limit)
    rng = random.Random(seed)
    span = Subspace(ext.A_ad.dim, commutator_subspace(ext.A_ad))
    base_rank = span.rank
    classes = Subspace(probe.rel_hc0_dim)
    contained = True
    elements = probe.generators() + [probe.random_unipotent(rng) for _ in range(samples)]
    for u in elements:
        v = probe.trace_log(u)
        if any(k >= ext.ideal_dim for k in v):
            raise NotNilpotent("log-trace left the ideal; extension data corrupt")
        span.add(v)
        classes.add(probe.chern_class(u))
    span_dim = span.rank - base_rank
    if classes.rank != span_dim:
        contained = False  # the span fails to embed into rel HC_0
    return K1ProbeReport(
        span_dim, probe.rel_hc0_dim, contained,
        contained and span_dim == probe.rel_hc0_dim, samples, seed,
    )


# ---------------------------------------------------------------------------
# Artinian bases and tangent tables
# ---------------------------------------------------------------------------


@dataclass
class ArtinianBase:
    name: str
    algebra: Algebra
    aug_ideal: Ideal
    nilpotency_order: int

    @classmethod
    def from_algebra(cls, B: Algebra, name=None) -> "ArtinianBase":
        ideal = augmentation_ideal(B)
        order = ideal.nilpotency_order() if ideal.dim else 1
        return cls(name or B.name or "B", B, ideal, order)


def base_extension(C: Algebra, base: ArtinianBase) -> ExtensionData:
    """C (x) B --id(x)aug--> C, the nilpotent extension probed by the table."""
    if not C.is_unital:
        raise ValueError("tangent tables need a unital coefficient algebra")
    B = base.algebra
    A = tensor(C, B)
    ent = {}
    for c in range(C.dim):
        for b, val in (B.augmentation or {}).items():
            ent[(c, c * B.dim + b)] = val
    f = AlgebraMorphism(A, C, SparseMatrix(C.dim, A.dim, ent))
    return ExtensionData(f)


@dataclass
class TangentRow:
    base: str
    base_dim: int
    nilpotency_order: int
    rel_hc: dict
    ideal_hc: dict
    ideal_mod_ambient_commutators: int
    alpha_quasi_iso: bool
    alpha_failing_degree: int | None
    checked: Interval

    def to_jsonable(self):
        return {
            "base": self.base,
            "base_dim": self.base_dim,
            "nilpotency_order": self.nilpotency_order,
            "relative_hc": {str(k): v for k, v in sorted(self.rel_hc.items())},
            "ideal_hc": {str(k): v for k, v in sorted(self.ideal_hc.items())},
            "ideal_mod_ambient_commutators": self.ideal_mod_ambient_commutators,
            "alpha_quasi_iso": self.alpha_quasi_iso,
            "alpha_failing_degree": self.alpha_failing_degree,
            "checked_range": self.checked.to_jsonable(),
        }


def tangent_table(C: Algebra, bases, D: int, size_limit=None, jobs=1):
    """For each Artinian base B: relative HC of C (x) B -> C, the HC of the
    augmentation-ideal coefficients C (x) Aug(B), and the quasi-isomorphism
    range of the comparison map between them."""
    if D < 2:
        raise ValueError("D must be >= 2")
    rows = []
    for base in bases:
        ext = base_extension(C, base)
        rng = Interval(0, D - 2)
        rel = relative_hc(ext, D, size_limit, jobs=jobs)
        ideal_rep = hc_homology(ext.ideal_algebra(), D, size_limit, jobs=jobs)
        alpha = is_quasi_iso(comparison_map(ext, D, "hc", size_limit), rng, jobs=jobs)
        # dim I / (I cap [A, A]): the concrete degree-zero relative class space
        comm = Subspace(ext.A_ad.dim, commutator_subspace(ext.A_ad))
        base_rank = comm.rank
        for t in range(ext.ideal_dim):
            comm.add({t: ONE})
        rows.append(
            TangentRow(
                base.name,
                base.algebra.dim,
                base.nilpotency_order,
                {n: rel.betti[n] for n in rng},
                {n: ideal_rep.betti[n] for n in rng},
                comm.rank - base_rank,
                alpha.ok,
                alpha.failing_degree,
                rng,
            )
        )
    return rows

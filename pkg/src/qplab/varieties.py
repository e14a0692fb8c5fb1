"""Varieties: ideals with parameterizations, image computation, sampling,
and constructors for the example families (rational normal curves, scrolls,
Veronese embeddings, the quintic del Pezzo surface, curves of maximal
regularity, and re-embedded plane curves).

A Variety is immutable after construction. The totally-real flag is set for
varieties carrying a parameterization over the base field and propagates
through maps and projections whose data live over the base field; in
prime-field mode this bookkeeping mirrors the characteristic-zero rule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import (BadBasePointError, DomainError, GenericityError,
                     IndeterminacyError, MembershipError, NoSamplerError,
                     NonEmbeddingError, QplabError, SamplingError)
from .fields import FieldConfig, require_same_field
from .groebner import Ideal, buchberger, monomials_of_degree
from .hilbert import binomial
from .linalg import Echelon, kernel_basis
from .orders import GREVLEX, Block
from .poly import Polynomial, reduce


@dataclass(frozen=True)
class RationalMap:
    """Homogeneous polynomial map ℙ^s ⇢ ℙ^r, components of a common degree.

    Components must have no common factor after content removal (caller
    contract; constructors here arrange it by design).
    """

    source_nvars: int
    target_nvars: int
    components: tuple

    def __post_init__(self):
        comps = self.components
        if len(comps) != self.target_nvars:
            raise DomainError("component count must match target arity")
        degs = {c.degree() for c in comps if not c.is_zero()}
        if not degs:
            raise DomainError("rational map with all components zero")
        if len(degs) != 1 or not all(c.is_homogeneous() for c in comps):
            raise DomainError("components must be homogeneous of one degree")
        for c in comps:
            if c.nvars != self.source_nvars:
                raise DomainError("component in wrong source ring")

    @property
    def degree(self) -> int:
        return next(c.degree() for c in self.components if not c.is_zero())

    @property
    def field(self) -> FieldConfig:
        return self.components[0].field

    def evaluate(self, point) -> tuple:
        return tuple(c.evaluate(point) for c in self.components)

    def compose(self, inner: "RationalMap") -> "RationalMap":
        """self ∘ inner (apply inner first)."""
        if inner.target_nvars != self.source_nvars:
            raise DomainError("arity mismatch in composition")
        f = self.field
        n = inner.source_nvars
        cache: dict = {(0,) * self.source_nvars: Polynomial.constant(n, f, 1)}

        def expand(mono: tuple) -> Polynomial:
            got = cache.get(mono)
            if got is not None:
                return got
            i = next(j for j, e in enumerate(mono) if e)
            prev = tuple(e - 1 if j == i else e for j, e in enumerate(mono))
            got = expand(prev) * inner.components[i]
            cache[mono] = got
            return got

        comps = []
        for c in self.components:
            acc = Polynomial.zero(n, f)
            for m, co in c.terms.items():
                acc = acc + expand(m).scale(co)
            comps.append(acc)
        return RationalMap(n, self.target_nvars, tuple(comps))


@dataclass
class Variety:
    """Projective variety: ambient ℙ^r, homogeneous ideal, optional data."""

    r: int
    ideal: Ideal
    param: RationalMap | None = None
    totally_real: bool = False
    param_source: "Variety | None" = None  # source of param when not ℙ^s
    gen_degree_bound: int | None = None    # known generation degree, if any
    label: str = ""
    _ndc: tuple | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        if self.ideal.nvars != self.r + 1:
            raise DomainError("ideal arity does not match ambient dimension")

    @property
    def field(self) -> FieldConfig:
        return self.ideal.field

    def ndc(self) -> tuple[int, int, int]:
        """(projective dimension, degree, codimension) from Hilbert data."""
        if self._ndc is None:
            h = self.ideal.hilbert()
            self._ndc = (h.n, h.degree, self.r - h.n)
        return self._ndc

    def is_nondegenerate(self) -> bool:
        return self.ideal.dim_graded_piece(1) == 0

    def contains_point(self, point) -> bool:
        zero = self.field.zero()
        return all(g.evaluate(point) == zero for g in self.ideal.gens)

    def quadric_space_dim(self) -> int:
        return self.ideal.dim_graded_piece(2)

    def __repr__(self):
        tag = self.label or f"V⊂P{self.r}"
        return f"Variety({tag}, {self.field.token()})"


def dim_deg_codim(v: Variety) -> tuple[int, int, int]:
    return v.ndc()


# ---------------------------------------------------------------------------
# image of a rational map
# ---------------------------------------------------------------------------

def image_of_map(source: Variety, phi: RationalMap, *, strategy: str = "auto",
                 gen_degree_bound: int | None = None, label: str = "") -> Variety:
    """Zariski closure of phi(source).

    Strategies: "elim" computes the graph ideal in a combined ring and
    eliminates the source block (weights make the graph weighted-homogeneous);
    "graded" computes each degree-t piece as the kernel of
    S_t(target) → (source ring)_{e·t} and keeps new generators per degree,
    valid through a known generation bound and verified one degree beyond.
    "auto" picks "graded" when a bound is available over a cheap source ring.
    """
    if phi.source_nvars != source.r + 1:
        raise DomainError("map source arity does not match source variety")
    require_same_field(phi.field, source.field)
    if all(source.ideal.contains(c) for c in phi.components):
        raise IndeterminacyError("map components all vanish on the source")
    if strategy == "auto":
        strategy = "graded" if gen_degree_bound is not None else "elim"
    if strategy == "graded":
        if gen_degree_bound is None:
            raise DomainError("graded strategy needs a generation bound")
        image_ideal = _image_ideal_graded(source, phi, gen_degree_bound)
    elif strategy == "elim":
        image_ideal = _image_ideal_elimination(source, phi)
    else:
        raise DomainError(f"unknown strategy {strategy!r}")
    new_param = phi if source.param is None else phi.compose(source.param)
    param_source = None
    if source.param is None and not source.ideal.is_zero():
        param_source = source
    elif source.param is not None:
        param_source = source.param_source
    return Variety(phi.target_nvars - 1, image_ideal, param=new_param,
                   totally_real=source.totally_real, param_source=param_source,
                   gen_degree_bound=gen_degree_bound, label=label)


def _image_ideal_elimination(source: Variety, phi: RationalMap) -> Ideal:
    s1 = phi.source_nvars
    r1 = phi.target_nvars
    big = s1 + r1
    f = phi.field
    e = phi.degree
    gens = [g.extend_ring(big, 0) for g in source.ideal.gens]
    for i, comp in enumerate(phi.components):
        y = Polynomial.variable(big, f, s1 + i)
        gens.append(y - comp.extend_ring(big, 0))
    weights = (1,) * s1 + (e,) * r1
    gb = buchberger(gens, Block(s1), weights=weights)
    kept = [g.restrict_to_back(s1) for g in gb
            if not any(any(m[:s1]) for m in g.terms)]
    return Ideal(r1, f, kept)


def _source_normal_form_tools(source: Variety):
    """(reduction basis, standard-monomial lookup) for the source ring."""
    if source.ideal.is_zero():
        return [], None
    gb = source.ideal.groebner_basis(GREVLEX)
    lms = [g.leading_monomial(GREVLEX) for g in gb]
    return gb, lms


def _image_ideal_graded(source: Variety, phi: RationalMap, bound: int) -> Ideal:
    from .orders import monomial_divides
    f = phi.field
    tvars = phi.target_nvars
    e = phi.degree
    source_gb, source_lms = _source_normal_form_tools(source)

    expand_cache: dict = {(0,) * tvars:
                          Polynomial.constant(phi.source_nvars, f, 1)}

    def expansion(mono: tuple) -> Polynomial:
        got = expand_cache.get(mono)
        if got is not None:
            return got
        i = next(j for j, v in enumerate(mono) if v)
        prev = tuple(v - 1 if j == i else v for j, v in enumerate(mono))
        prod = expansion(prev) * phi.components[i]
        if source_gb:
            prod = reduce(prod, source_gb, GREVLEX)
        expand_cache[mono] = prod
        return prod

    def std_monomials(deg: int) -> list[tuple]:
        monos = monomials_of_degree(phi.source_nvars, deg)
        if source_lms is None:
            return monos
        return [m for m in monos
                if not any(monomial_divides(lm, m) for lm in source_lms)]

    gens: list[Polynomial] = []
    prev_piece: list[Polynomial] | None = None
    t = 1
    while t <= bound + 1:
        tmonos = monomials_of_degree(tvars, t)
        tindex = {m: i for i, m in enumerate(tmonos)}
        # current ideal piece from already-found generators
        span = Echelon(f, len(tmonos))
        if prev_piece is not None:
            for g in prev_piece:
                for i in range(tvars):
                    shifted = g.mul_term(
                        tuple(1 if j == i else 0 for j in range(tvars)),
                        f.one())
                    span.add(_poly_to_vector(shifted, tindex, f))
        # full piece of the vanishing ideal
        smonos = std_monomials(e * t)
        sindex = {m: i for i, m in enumerate(smonos)}
        rows = []
        for tm in tmonos:
            exp = expansion(tm)
            row = [f.zero()] * len(smonos)
            for m, c in exp.terms.items():
                row[sindex[m]] = c
            rows.append(row)
        # vectors v with v·rows = 0: kernel of the transpose
        transpose = list(map(list, zip(*rows))) if rows else []
        ker = kernel_basis(f, transpose, len(tmonos))
        piece: list[Polynomial] = []
        new_count = 0
        for vec in ker:
            poly = _vector_to_poly(vec, tmonos, tvars, f)
            piece.append(poly)
            if span.add(vec):
                new_count += 1
                if t <= bound:
                    gens.append(poly)
        if t == bound + 1 and new_count:
            raise NonEmbeddingError(
                "image ideal not generated within the stated degree bound")
        prev_piece = piece
        t += 1
    return Ideal(tvars, f, gens)


def _poly_to_vector(p: Polynomial, index: dict, f: FieldConfig):
    row = [f.zero()] * len(index)
    for m, c in p.terms.items():
        row[index[m]] = c
    return row


def _vector_to_poly(vec, monos, nvars, f: FieldConfig):
    prime = f.is_prime_field
    terms = {}
    for m, c in zip(monos, vec):
        if c:
            terms[m] = int(c) % f.characteristic if prime else Fraction(c)
    return Polynomial(nvars, f, terms)


# ---------------------------------------------------------------------------
# point sampling
# ---------------------------------------------------------------------------

def _random_field_element(rng: random.Random, f: FieldConfig):
    if f.is_prime_field:
        return rng.randrange(f.characteristic)
    return Fraction(rng.randint(-40, 40))


def _normalize_point(point, f: FieldConfig):
    zero = f.zero()
    lead = next((x for x in point if x != zero), None)
    if lead is None:
        return None
    inv = f.inv(lead)
    return tuple(f.mul(x, inv) for x in point)


def _hypersurface_point(gen: Polynomial, rng: random.Random, f: FieldConfig):
    """Random point on {gen = 0} by scanning a random line, prime fields only."""
    p = f.characteristic
    n = gen.nvars
    for _ in range(60):
        base = [rng.randrange(p) for _ in range(n)]
        direction = [rng.randrange(p) for _ in range(n)]
        lam = np.arange(p, dtype=np.int64)
        vals = np.zeros(p, dtype=np.int64)
        for m, c in gen.terms.items():
            term = np.full(p, int(c), dtype=np.int64)
            for i, e in enumerate(m):
                if e:
                    coord = (base[i] + direction[i] * lam) % p
                    for _ in range(e):
                        term = term * coord % p
            vals = (vals + term) % p
        roots = np.nonzero(vals == 0)[0]
        if roots.size == 0:
            continue
        lam0 = int(roots[rng.randrange(roots.size)])
        pt = tuple((b + d * lam0) % p for b, d in zip(base, direction))
        norm = _normalize_point(pt, f)
        if norm is not None:
            return norm
    raise SamplingError("no point found on the hypersurface")


def _sample_source_point(source: Variety | None, nvars: int,
                         rng: random.Random, f: FieldConfig):
    if source is None or source.ideal.is_zero():
        while True:
            pt = tuple(_random_field_element(rng, f) for _ in range(nvars))
            norm = _normalize_point(pt, f)
            if norm is not None:
                return norm
    if not f.is_prime_field:
        raise NoSamplerError(
            "sampling on a positive-codimension source needs a prime field")
    if len(source.ideal.gens) == 1:
        return _hypersurface_point(source.ideal.gens[0], rng, f)
    raise NoSamplerError("no sampling fallback for this source variety")


def sample_point(v: Variety, seed) -> tuple:
    """Random point of the variety; distinct seeds are independent draws."""
    f = v.field
    rng = random.Random(f"sample:{seed}")
    if v.param is not None:
        src_nvars = v.param.source_nvars
        for _ in range(100):
            src = _sample_source_point(v.param_source, src_nvars, rng, f)
            raw = v.param.evaluate(src)
            pt = _normalize_point(raw, f)
            if pt is None:
                continue  # indeterminacy locus
            if not v.contains_point(pt):
                raise MembershipError(
                    "parameterization point violates the ideal")
            return pt
        raise SamplingError("repeated indeterminacy while sampling")
    if v.ideal.is_zero():
        while True:
            pt = _normalize_point(tuple(_random_field_element(rng, f)
                                        for _ in range(v.r + 1)), f)
            if pt is not None:
                return pt
    if f.is_prime_field and len(v.ideal.gens) == 1:
        pt = _hypersurface_point(v.ideal.gens[0], rng, f)
        return pt
    raise NoSamplerError("no parameterization and no fallback sampler")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def projective_space(r: int, field: FieldConfig) -> Variety:
    comps = tuple(Polynomial.variable(r + 1, field, i) for i in range(r + 1))
    return Variety(r, Ideal(r + 1, field, []),
                   param=RationalMap(r + 1, r + 1, comps),
                   totally_real=True, gen_degree_bound=1,
                   label=f"P{r}")


def _two_row_minors(nvars: int, field: FieldConfig, columns) -> list[Polynomial]:
    """2x2 minors of a 2-row matrix given as (top index, bottom index) columns."""
    gens = []
    for a in range(len(columns)):
        t1, b1 = columns[a]
        for b in range(a + 1, len(columns)):
            t2, b2 = columns[b]
            m1 = Polynomial.variable(nvars, field, t1) * \
                Polynomial.variable(nvars, field, b2)
            m2 = Polynomial.variable(nvars, field, t2) * \
                Polynomial.variable(nvars, field, b1)
            gens.append(m1 - m2)
    return gens


def rational_normal_curve(degree: int, field: FieldConfig) -> Variety:
    if degree < 1:
        raise DomainError("degree must be at least 1")
    nvars = degree + 1
    columns = [(i, i + 1) for i in range(degree)]
    gens = _two_row_minors(nvars, field, columns)
    comps = tuple(Polynomial.monomial(2, field, (degree - j, j))
                  for j in range(degree + 1))
    return Variety(degree, Ideal(nvars, field, gens),
                   param=RationalMap(2, nvars, comps), totally_real=True,
                   gen_degree_bound=2, label=f"rnc{degree}")


def scroll(degrees, field: FieldConfig) -> Variety:
    """Rational normal scroll with the given column degrees (0 allowed: cone)."""
    degrees = list(degrees)
    if not degrees or any(a < 0 for a in degrees):
        raise DomainError("column degrees must be nonnegative")
    if sum(degrees) < 1:
        raise DomainError("degenerate scroll: all column degrees zero")
    k = len(degrees)
    if k == 1:
        return rational_normal_curve(degrees[0], field)
    offsets = []
    pos = 0
    for a in degrees:
        offsets.append(pos)
        pos += a + 1
    nvars = pos
    columns = []
    for off, a in zip(offsets, degrees):
        columns.extend((off + j, off + j + 1) for j in range(a))
    gens = _two_row_minors(nvars, field, columns)
    amax = max(degrees)
    src = k + 2  # coordinates (s, t, w_1..w_k)
    comps = []
    for i, a in enumerate(degrees):
        for j in range(a + 1):
            expo = [0] * src
            expo[0] = amax - j
            expo[1] = j
            expo[2 + i] = 1
            comps.append(Polynomial.monomial(src, field, tuple(expo)))
    name = "scroll(" + ",".join(map(str, degrees)) + ")"
    return Variety(nvars - 1, Ideal(nvars, field, gens),
                   param=RationalMap(src, nvars, tuple(comps)),
                   totally_real=True, gen_degree_bound=2, label=name)


def veronese(n: int, degree: int, field: FieldConfig) -> Variety:
    if n < 1 or degree < 1:
        raise DomainError("need positive dimension and degree")
    src = projective_space(n, field)
    monos = monomials_of_degree(n + 1, degree)
    comps = tuple(Polynomial.monomial(n + 1, field, m) for m in monos)
    phi = RationalMap(n + 1, len(monos), comps)
    return image_of_map(src, phi, strategy="graded", gen_degree_bound=2,
                        label=f"veronese({n},{degree})")


def plane_curve(f_text, field: FieldConfig, totally_real: bool = False,
                label: str = "") -> Variety:
    """Plane curve {F = 0} ⊂ ℙ². Irreducibility and smoothness are caller
    contracts; the totally-real flag asserts a known dense real locus."""
    f = (f_text if isinstance(f_text, Polynomial)
         else Polynomial.parse(f_text, 3, field))
    if f.is_zero() or not f.is_homogeneous():
        raise DomainError("need a nonzero ternary form")
    return Variety(2, Ideal(3, field, [f]), totally_real=totally_real,
                   gen_degree_bound=f.degree(), label=label or "plane-curve")


def quintic_del_pezzo(field: FieldConfig) -> Variety:
    """Quintic del Pezzo surface in ℙ⁵: plane cubics through four points.

    The cubic system is the product of the conic pencil through the four
    points with the linear forms, so the image sits inside the Segre
    scroll(1,1,1) in the same coordinates.
    """
    q0 = Polynomial.parse("x0*x1 - x0*x2", 3, field)
    q1 = Polynomial.parse("x0*x1 - x1*x2", 3, field)
    lins = [Polynomial.variable(3, field, i) for i in range(3)]
    comps = []
    for w in lins:
        comps.append(q0 * w)
        comps.append(q1 * w)
    phi = RationalMap(3, 6, tuple(comps))
    return image_of_map(projective_space(2, field), phi, strategy="graded",
                        gen_degree_bound=2, label="delpezzo5")


def coordinate_line(r: int, field: FieldConfig) -> Variety:
    """The line {x2 = ... = xr = 0} spanned by the first two coordinate points."""
    gens = [Polynomial.variable(r + 1, field, i) for i in range(2, r + 1)]
    comps = [Polynomial.variable(2, field, 0), Polynomial.variable(2, field, 1)]
    comps += [Polynomial.zero(2, field)] * (r - 1)
    return Variety(r, Ideal(r + 1, field, gens),
                   param=RationalMap(2, r + 1, tuple(comps)),
                   totally_real=True, gen_degree_bound=1, label="line")


def line_through_points(p1, p2, field: FieldConfig, r: int) -> Variety:
    """The line spanned by two independent points, cut out by linear forms."""
    pts = [[field.convert(x) for x in p] for p in (p1, p2)]
    coeff_rows = kernel_basis(field, pts, r + 1)
    if len(coeff_rows) != r - 1:
        raise DomainError("points do not span a line")
    gens = []
    for row in coeff_rows:
        terms = {}
        for i, c in enumerate(row):
            if c:
                terms[tuple(1 if j == i else 0 for j in range(r + 1))] = \
                    field.convert(c)
        gens.append(Polynomial(r + 1, field, terms))
    s = Polynomial.variable(2, field, 0)
    t = Polynomial.variable(2, field, 1)
    comps = tuple(s.scale(a) + t.scale(b) for a, b in zip(*pts))
    return Variety(r, Ideal(r + 1, field, gens),
                   param=RationalMap(2, r + 1, comps),
                   totally_real=True, gen_degree_bound=1, label="line")


# -- binary form helpers for the maximal-regularity construction -------------

def _binary_coeffs(form: Polynomial) -> list:
    d = form.degree()
    out = [form.field.zero()] * (d + 1)
    for (i, j), c in form.terms.items():
        out[j] = c  # coefficient of s^(d-j) t^j
    return out


def _univ_gcd_degree(a: list, b: list, f: FieldConfig) -> int:
    """Degree of gcd of univariate coefficient lists (0 = coprime)."""
    def trim(v):
        while v and v[-1] == f.zero():
            v.pop()
        return v

    a, b = trim(list(a)), trim(list(b))
    while b:
        # a mod b
        while len(a) >= len(b) and a:
            factor = f.div(a[-1], b[-1])
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] = f.sub(a[shift + i], f.mul(factor, c))
            a = trim(a)
        a, b = b, a
    return len(a) - 1 if a else -1


def _binary_squarefree_and_tfree(v: Polynomial) -> bool:
    f = v.field
    coeffs = _binary_coeffs(v)
    if coeffs[0] == f.zero() or coeffs[-1] == f.zero():
        return False  # divisible by t or by s
    deriv = [f.mul(f.convert(i), c) for i, c in enumerate(coeffs)][1:]
    return _univ_gcd_degree(coeffs, deriv, f) == 0


def _binary_coprime(a: Polynomial, b: Polynomial) -> bool:
    f = a.field
    ca, cb = _binary_coeffs(a), _binary_coeffs(b)
    if ca[0] == f.zero() and cb[0] == f.zero():
        return False  # both divisible by t ... coefficient lists start at t^0
    return _univ_gcd_degree(ca, cb, f) == 0


def _random_binary_form(deg: int, rng: random.Random, f: FieldConfig) -> Polynomial:
    while True:
        terms = {}
        for j in range(deg + 1):
            c = _random_field_element(rng, f)
            if c != f.zero():
                terms[(deg - j, j)] = f.convert(c)
        if not terms:
            continue
        form = Polynomial(2, f, terms)
        coeffs = _binary_coeffs(form)
        if coeffs[0] != f.zero() and coeffs[-1] != f.zero():
            return form


def secant_order(curve: Variety, line: Variety, seed=0) -> int:
    """Length of the scheme curve ∩ line.

    Computed as the eventually-constant Hilbert function value of the sum
    ideal saturated by a generic linear form; zero when they are disjoint.
    """
    from .errors import EmptyVarietyError
    if curve.r != line.r:
        raise DomainError("curve and line in different ambient spaces")
    require_same_field(curve.field, line.field)
    n1, _, _ = curve.ndc()
    nl, dl, _ = line.ndc()
    if n1 != 1:
        raise DomainError("first argument must be a curve")
    if (nl, dl) != (1, 1):
        raise DomainError("second argument must be a line")
    if line.ideal.contains_ideal(curve.ideal):
        raise DomainError("the line lies on the curve")
    total = curve.ideal.sum(line.ideal)
    rng = random.Random(f"secant:{seed}")
    f = curve.field
    while True:
        terms = {}
        for i in range(curve.r + 1):
            c = _random_field_element(rng, f)
            if c != f.zero():
                terms[tuple(1 if j == i else 0 for j in range(curve.r + 1))] = \
                    f.convert(c)
        if terms:
            ell = Polynomial(curve.r + 1, f, terms)
            break
    saturated = total.saturate(ell)
    try:
        h = saturated.hilbert()
    except EmptyVarietyError:
        return 0
    if h.n != 0:
        raise AssertionError("curve–line intersection is not finite")
    return h.degree


def cmr_curve(r: int, degree: int, on_scroll: bool, seed,
              field: FieldConfig) -> Variety:
    """Rational curve of maximal regularity of the given degree in ℙ^r.

    on_scroll=True puts the curve on the surface scroll S(1, r−2) with the
    extremal secant along the directrix; otherwise the curve lies only on the
    threefold cone S(0,0,r−2) and the extremal secant is its vertex line.
    Verified on construction: image degree and extremal secant order.
    """
    if r < 4:
        raise DomainError("ambient dimension must be at least 4")
    if degree < r + 2:
        raise DomainError("degree must be at least r + 2")
    sec = degree - r + 2
    last_error = None
    for attempt in range(8):
        rng = random.Random(f"cmr:{seed}:{attempt}")
        try:
            if on_scroll:
                u = _random_binary_form(degree - 1, rng, field)
                v = _random_binary_form(sec, rng, field)
                if not (_binary_squarefree_and_tfree(v) and _binary_coprime(u, v)):
                    continue
                s = Polynomial.variable(2, field, 0)
                t = Polynomial.variable(2, field, 1)
                comps = [u * s, u * t]
                for j in range(r - 1):
                    comps.append(v * Polynomial.monomial(
                        2, field, (r - 2 - j, j)))
            else:
                fpoly = _random_binary_form(degree, rng, field)
                gpoly = _random_binary_form(degree, rng, field)
                h = _random_binary_form(sec, rng, field)
                if not _binary_squarefree_and_tfree(h):
                    continue
                if not (_binary_coprime(fpoly, gpoly)
                        and _binary_coprime(fpoly, h)
                        and _binary_coprime(gpoly, h)):
                    continue
                comps = [fpoly, gpoly]
                for j in range(r - 1):
                    comps.append(h * Polynomial.monomial(
                        2, field, (r - 2 - j, j)))
            phi = RationalMap(2, r + 1, tuple(comps))
            curve = image_of_map(projective_space(1, field), phi,
                                 strategy="graded", gen_degree_bound=sec,
                                 label=f"cmr({r},{degree},"
                                       f"{'on' if on_scroll else 'off'})")
            n, d, _ = curve.ndc()
            if (n, d) != (1, degree):
                raise GenericityError("image degree dropped")
            line = coordinate_line(r, field)
            if secant_order(curve, line) != sec:
                raise GenericityError("extremal secant verification failed")
            return curve
        except (GenericityError, NonEmbeddingError, QplabError) as exc:
            last_error = exc
            continue
    raise GenericityError(
        f"maximal-regularity construction failed after retries: {last_error}")


def plane_curve_reembed(f_text, k: int, points, field: FieldConfig,
                        totally_real: bool = True, label: str = "") -> Variety:
    """Embed the plane curve {F = 0} by degree-k forms through the given
    points: the k-uple image followed by inner projection from each point's
    image. For deg F ≤ k ≤ 3 the model is linearly normal of degree
    k·deg(F) − #points in ℙ^{h⁰−1}."""
    from .projection import project_from_points
    curve = plane_curve(f_text, field, totally_real=totally_real,
                        label="plane-source")
    f = curve.ideal.gens[0]
    degf = f.degree()
    for pt in points:
        if not curve.contains_point(pt):
            raise BadBasePointError(f"base point {pt} not on the curve")
    big = binomial(k + 2, 2)
    penalty = binomial(k - degf + 2, 2) if k >= degf else 0
    expected_r = big - penalty - len(points) - 1
    if expected_r < 3:
        raise DomainError("ambient dimension would drop below 3")
    monos = monomials_of_degree(3, k)
    comps = tuple(Polynomial.monomial(3, field, m) for m in monos)
    phi = RationalMap(3, len(monos), comps)
    model = image_of_map(curve, phi, strategy="graded", gen_degree_bound=3,
                         label=label or f"plane-model(k={k})")
    for pt in points:
        img = _normalize_point(model.param.evaluate(pt), field)
        if img is None:
            raise BadBasePointError("point lands in the indeterminacy locus")
        model = project_from_points(model, [img])
    model.label = label or f"plane-model(k={k},drop={len(points)})"
    n, d, _ = model.ndc()
    if n != 1 or d != k * degf - len(points) or model.r != expected_r:
        raise NonEmbeddingError(
            f"expected a degree-{k * degf - len(points)} curve in "
            f"P{expected_r}, got degree {d} in P{model.r}")
    return model

"""Words in root reflections and the relations between them.

A word is a finite sequence of anisotropic roots standing for the ordered
product of their reflections.  This module evaluates words exactly, tracks
letter counts per orbit modulo two (reflections of linearly dependent roots
coincide, so the counts live on lines through the origin), computes the
order of a product of two reflections with a sound infinite-order
certificate, decides whether the reflection presentation is of Coxeter
shape, and rewrites identity words to eliminate letters outside a
preferred set of roots.
"""

from dataclasses import dataclass
from fractions import Fraction

from .core import EarsDescriptor
from .linalg import (
    AmbientSpace,
    IsotropicRoot,
    Matrix,
    Vector,
    reflect,
    reflection_matrix,
)
from .weyl import (
    GroupElement,
    Minimal,
    NotMinimal,
    OrbitDescriptor,
    Unknown,
    _line_key,
    orbit_closed_form,
    minimality,
    word_element,
)


class UnknownRoot(ValueError):
    """A word letter is not a root of the system under discussion."""


class NotARelation(ValueError):
    """The word does not evaluate to the identity."""


@dataclass(frozen=True)
class GeneratorWord:
    """A sequence of anisotropic roots, read as a product of reflections."""

    letters: tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "letters",
            tuple(v if isinstance(v, Vector) else Vector(v) for v in self.letters),
        )
        dims = {v.dim for v in self.letters}
        if len(dims) > 1:
            raise ValueError(f"letters of mixed dimension: {sorted(dims)}")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)


def _letters(word) -> tuple[Vector, ...]:
    if isinstance(word, GeneratorWord):
        return word.letters
    return tuple(v if isinstance(v, Vector) else Vector(v) for v in word)


def evaluate(word, space: AmbientSpace) -> GroupElement:
    """Exact left-to-right product of the letter reflections.

    The empty word gives the identity.  Raises IsotropicRoot on an
    isotropic letter and DimensionMismatch on a letter of the wrong size.
    """
    return word_element(space, _letters(word))


def orbit_id(R: EarsDescriptor, v: Vector) -> OrbitDescriptor:
    """The orbit tag under which a letter is counted.

    Linearly dependent roots define the same reflection, so they must
    share a tag: the orbit of the shortest root on the letter's line.
    """
    if R.classify(v) != "anisotropic":
        raise UnknownRoot(f"{v} is not an anisotropic root of {R.label}")
    half = v * Fraction(1, 2)
    if R.classify(half) == "anisotropic":
        v = half
    return orbit_closed_form(R, v)


class ParityVector:
    """Letter counts modulo two, one bit per orbit of lines."""

    __slots__ = ("bits",)

    def __init__(self, bits=None):
        odd = {}
        for orbit, bit in dict(bits or {}).items():
            if bit % 2:
                odd[orbit] = 1
        self.bits = odd

    def __getitem__(self, orbit) -> int:
        return self.bits.get(orbit, 0)

    def is_zero(self) -> bool:
        return not self.bits

    def support(self) -> tuple:
        return tuple(sorted(self.bits, key=lambda ob: ob.key()))

    def __eq__(self, other):
        if not isinstance(other, ParityVector):
            return NotImplemented
        return self.bits == other.bits

    def __hash__(self):
        return hash(frozenset(self.bits))

    def __repr__(self):
        if self.is_zero():
            return "ParityVector(0)"
        bases = [ob.base_offset.coords for ob in self.support()]
        return f"ParityVector(odd on {len(self.bits)} orbit(s): {bases})"


def parity(word, R: EarsDescriptor) -> ParityVector:
    """Per-orbit letter counts mod 2; raises UnknownRoot on a non-root."""
    counts = {}
    for letter in _letters(word):
        oid = orbit_id(R, letter)
        counts[oid] = counts.get(oid, 0) + 1
    return ParityVector(counts)


# -- order of a product of two reflections -----------------------------------


@dataclass(frozen=True)
class Infinite:
    """Certified infinite order; cap records how far powers were tried."""

    cap: int
    certificate: tuple[Vector, Vector] | None = None


@dataclass(frozen=True)
class Undetermined:
    """No identity power up to cap and no certificate either way."""

    cap: int


def _solve_rows(rows: list[list[Fraction]], width: int):
    """Row-echelon kernel basis of the matrix with the given rows."""
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(width):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * width
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def _translation_certificate(m: Matrix):
    """A pair (v, w), w nonzero, with m v = v + w and m w = w, or None.

    Such a w makes m^k v = v + k w, so no power of m is the identity.
    """
    d = len(m.rows)
    a = [[m[i, j] - (1 if i == j else 0) for j in range(d)] for i in range(d)]
    kernel = _solve_rows([row[:] for row in a], d)
    if not kernel:
        return None
    # w must also be a combination of columns of a: solve a v = w by
    # treating (v, coeffs of kernel basis) as unknowns of a v - K t = 0
    cols = d + len(kernel)
    stacked = []
    for i in range(d):
        row = [Fraction(x) for x in a[i]]
        row += [-Fraction(k[i]) for k in kernel]
        stacked.append(row)
    for sol in _solve_rows(stacked, cols):
        coeffs = sol[d:]
        if all(c == 0 for c in coeffs):
            continue
        w = [
            sum(c * k[i] for c, k in zip(coeffs, kernel))
            for i in range(d)
        ]
        if any(x != 0 for x in w):
            return Vector(sol[:d]), Vector(w)
    return None


def coxeter_order(space: AmbientSpace, alpha: Vector, beta: Vector, cap: int = 24):
    """Order of r_alpha r_beta: an integer <= cap, Infinite, or Undetermined.

    Infinite is only reported with a certificate: a vector moved by a fixed
    nonzero translation under some power of the product, which rules out
    every finite order.  Without one the result is Undetermined(cap).
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    m = reflection_matrix(space, alpha) @ reflection_matrix(space, beta)
    powers = []
    p = m
    for n in range(1, cap + 1):
        if p.is_identity():
            return n
        powers.append(p)
        p = p @ m
    for p in powers:
        cert = _translation_certificate(p)
        if cert is not None:
            return Infinite(cap, cert)
    return Undetermined(cap)


# -- Coxeter shape of the presentation ---------------------------------------


@dataclass(frozen=True)
class Yes:
    nullity: int


@dataclass(frozen=True)
class No:
    roots: tuple[Vector, Vector, Vector]
    word: GeneratorWord


_WITNESS_PATTERN = (0, 1, 2, 0, 1, 2, 1, 0, 2, 1, 0, 2)


def witness_word(roots) -> GeneratorWord:
    """The twelve-letter identity word over three roots that share a
    direction and differ by two independent translations."""
    a = tuple(roots)
    if len(a) != 3:
        raise ValueError("exactly three roots are required")
    return GeneratorWord(tuple(a[i] for i in _WITNESS_PATTERN))


def coxeter_presentation_decision(R: EarsDescriptor):
    """Can the reflection group carry a Coxeter presentation on the roots?

    Yes exactly when the nullity is zero or one.  At nullity two and above
    the answer is No, witnessed by three roots with a common direction and
    two independent translation displacements: the twelve-letter word over
    them evaluates to the identity while no Coxeter relation implies it.
    """
    if R.nullity <= 1:
        return Yes(R.nullity)
    space = R.space
    sl = R.translations["short"]
    dot = max(R.dot_classes["short"], key=lambda v: v.coords)
    lam = sl.lattice.rows
    shifts = [row * 2 for row in lam[:2]]
    zero = Vector([0] * R.nullity)
    roots = tuple(
        space.assemble(s, dot) for s in (zero, shifts[0], shifts[1])
    )
    for r in roots:
        if R.classify(r) != "anisotropic":
            raise AssertionError(f"witness root {r} fell outside the system")
    word = witness_word(roots)
    if not evaluate(word, space).matrix.is_identity():
        raise AssertionError("witness word failed to evaluate to the identity")
    return No(roots, word)


# -- obstruction to the presentation by conjugation ---------------------------


@dataclass(frozen=True)
class Obstruction:
    word: GeneratorWord
    parity: ParityVector
    matrix: Matrix


@dataclass(frozen=True)
class NoneFound:
    orbits_checked: int


def conjugation_obstruction(R: EarsDescriptor, depth: int = 8,
                            budget: int = 1_000_000):
    """Identity word with odd letter count on some orbit, if one exists.

    Runs the minimality decision.  A removable orbit yields the word
    r_base r_dk ... r_d1 where r_base = r_d1 ... r_dk is the generation
    certificate: it evaluates to the identity but uses the base's orbit an
    odd number of times, so equality classes of words cannot be told apart
    by orbit counts alone.  A Minimal verdict reports NoneFound; an
    Unknown verdict is returned as-is.
    """
    verdict = minimality(R, depth, budget)
    if isinstance(verdict, Minimal):
        return NoneFound(verdict.orbit_count)
    if isinstance(verdict, Unknown):
        return verdict
    assert isinstance(verdict, NotMinimal)
    letters = (verdict.orbit.base,) + tuple(reversed(verdict.certificate))
    word = GeneratorWord(letters)
    element = evaluate(word, R.space)
    if not element.matrix.is_identity():
        raise AssertionError("obstruction word failed to evaluate to the identity")
    pv = parity(word, R)
    if pv[orbit_id(R, verdict.orbit.base)] != 1:
        raise AssertionError("obstruction word has even count on the removed orbit")
    return Obstruction(word, pv, element.matrix)


# -- rewriting relations into a preferred alphabet ----------------------------


def _preferred_lines(preferred_subset) -> set:
    return {_line_key(v if isinstance(v, Vector) else Vector(v))
            for v in preferred_subset}


def conjugation_rewrite(word, R: EarsDescriptor, preferred_subset):
    """Eliminate letters outside the preferred set from an identity word.

    Repeatedly (a) cancels adjacent letters on a common line and (b) moves
    the leftmost outside letter one step right using
    r_b r_a = r_a r_{r_a(b)}, which conjugates it while preserving both
    the evaluation and the per-orbit letter counts mod 2.  Outside letters
    annihilate in pairs when the walk brings two of them together; a
    letter with no reachable mate survives.  Returns the rewritten word
    and the step log.
    """
    space = R.space
    letters = list(_letters(word))
    for v in letters:
        if R.classify(v) != "anisotropic":
            raise UnknownRoot(f"{v} is not an anisotropic root of {R.label}")
    if not evaluate(letters, space).matrix.is_identity():
        raise NotARelation("the word does not evaluate to the identity")
    preferred = _preferred_lines(preferred_subset)
    steps = []
    fuel = 4 * (len(letters) + 2) ** 2
    changed = True
    while changed and fuel > 0:
        changed = False
        i = 0
        while i + 1 < len(letters):
            if _line_key(letters[i]) == _line_key(letters[i + 1]):
                steps.append(("cancel", i, letters[i], letters[i + 1]))
                del letters[i:i + 2]
                changed = True
                i = max(i - 1, 0)
            else:
                i += 1
        for i, v in enumerate(letters):
            if _line_key(v) in preferred or i + 1 >= len(letters):
                continue
            nxt = letters[i + 1]
            moved = reflect(space, nxt, v)
            steps.append(("swap", i, v, nxt, moved))
            letters[i], letters[i + 1] = nxt, moved
            changed = True
            break
        fuel -= 1
    if not evaluate(letters, space).matrix.is_identity():
        raise AssertionError("rewriting changed the evaluation")
    return GeneratorWord(tuple(letters)), tuple(steps)


# -- the defining relation families, as word builders -------------------------


def square_relation(alpha: Vector) -> GeneratorWord:
    """r_a r_a = 1."""
    return GeneratorWord((alpha, alpha))


def line_relation(alpha: Vector, beta: Vector) -> GeneratorWord:
    """r_a r_b = 1 for linearly dependent roots a, b."""
    if _line_key(alpha) != _line_key(beta):
        raise ValueError(f"{alpha} and {beta} span different lines")
    return GeneratorWord((alpha, beta))


def conjugation_relation(space: AmbientSpace, alpha: Vector,
                         beta: Vector) -> GeneratorWord:
    """r_a r_b r_a = r_{r_a(b)}, written as a four-letter identity word."""
    return GeneratorWord((alpha, beta, alpha, reflect(space, alpha, beta)))

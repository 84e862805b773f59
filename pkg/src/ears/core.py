"""Extended affine root systems presented by finite data.

A system is a finite root system living in the dot space, together with one
isotropic translation set per root-length class: every anisotropic root is
dot-root + translation, and the isotropic roots are the pairwise sums of the
short translation set.  Membership, windowed enumeration, axiom checking,
isotropic closure and trimming all operate on this finite presentation with
exact rational arithmetic; nothing infinite is ever materialized.

Vectors live in the space isotropic + dot + dual; roots have zero dual part.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .finite import (
    FiniteRootSystem,
    InvalidRank,
    build_finite,
    length_classes,
)
from .linalg import AmbientSpace, DimensionMismatch, Matrix, Vector, _frac
from .semilattice import (
    RankMismatch,
    ResidueTable,
    Semilattice,
    residue_table,
    sum_condition,
    verify_semilattice,
)


class ConstraintViolation(ValueError):
    pass


class WrongArity(ValueError):
    pass


class NotBCType(ValueError):
    pass


_LABEL_RE = re.compile(r"^(BC|[A-G])(\d+)$")

_CLASS_TAGS = ("short", "long", "extra")


def _as_finite(x) -> FiniteRootSystem:
    if isinstance(x, FiniteRootSystem):
        return x
    m = _LABEL_RE.match(str(x).strip().upper().replace("_", ""))
    if not m:
        raise InvalidRank(f"unrecognized type label {x!r}")
    return build_finite(m.group(1), int(m.group(2)))


@dataclass(frozen=True)
class RootQuery:
    vector: Vector


class EarsDescriptor:
    """Finite presentation of an extended affine root system."""

    __slots__ = (
        "finite_part",
        "nullity",
        "translations",
        "space",
        "dot_classes",
        "isotropic",
        "removal_chain",
        "_tables",
    )

    def __init__(self, finite_part, nullity, translations, removal_chain=()):
        sh, lg, ex = length_classes(finite_part)
        classes = {"short": sh, "long": lg, "extra": ex}
        object.__setattr__(self, "finite_part", finite_part)
        object.__setattr__(self, "nullity", nullity)
        object.__setattr__(self, "translations", dict(translations))
        object.__setattr__(
            self, "space", AmbientSpace(nullity, finite_part.form.gram)
        )
        object.__setattr__(
            self, "dot_classes", {t: classes[t] for t in _CLASS_TAGS if classes[t]}
        )
        object.__setattr__(
            self, "isotropic", translations["short"].sum_set(translations["short"])
        )
        object.__setattr__(self, "removal_chain", tuple(removal_chain))
        tables = {t: residue_table(s) for t, s in self.translations.items()}
        tables["isotropic"] = residue_table(self.isotropic)
        object.__setattr__(self, "_tables", tables)
        if set(self.dot_classes) != set(self.translations):
            raise WrongArity(
                f"{finite_part.label} has length classes "
                f"{sorted(self.dot_classes)} but translation sets "
                f"{sorted(self.translations)}"
            )

    def __setattr__(self, name, value):
        raise AttributeError("EarsDescriptor is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EarsDescriptor)
            and self.finite_part.label == other.finite_part.label
            and self.nullity == other.nullity
            and self.translations == other.translations
        )

    def __hash__(self) -> int:
        return hash(
            (
                self.finite_part.label,
                self.nullity,
                tuple(sorted(self.translations.items(), key=lambda kv: kv[0])),
            )
        )

    def __repr__(self) -> str:
        return f"<EARS {self.label}>"

    @property
    def label(self) -> str:
        return f"{self.finite_part.label} nullity {self.nullity}"

    # -- membership ---------------------------------------------------------

    def _member(self, tag: str, iso: Vector) -> bool:
        table = self._tables.get(tag)
        if table is not None:
            return table.contains(iso)
        target = self.isotropic if tag == "isotropic" else self.translations[tag]
        return target.contains(iso)

    def class_of_dot(self, dot: Vector) -> str | None:
        for tag, roots in self.dot_classes.items():
            if dot in roots:
                return tag
        return None

    def classify(self, v: Vector) -> str:
        """One of "anisotropic", "isotropic", "not_root"."""
        if v.dim != self.space.dim:
            raise DimensionMismatch(
                f"vector dim {v.dim}, ambient dim {self.space.dim}"
            )
        if any(c != 0 for c in self.space.dual_part(v)):
            return "not_root"
        dot = Vector(self.space.dot_part(v))
        iso = Vector(self.space.iso_part(v))
        if dot.is_zero():
            return "isotropic" if self._member("isotropic", iso) else "not_root"
        tag = self.class_of_dot(dot)
        if tag is None:
            return "not_root"
        return "anisotropic" if self._member(tag, iso) else "not_root"

    # -- assembly and enumeration -------------------------------------------

    def assemble_root(self, dot: Vector, iso: Vector) -> Vector:
        return self.space.assemble(iso.coords, dot.coords)

    def families(self, bound=None):
        """(tag, dot root, translation set) triples, one per finite root."""
        out = []
        for tag in _CLASS_TAGS:
            for dot in sorted(self.dot_classes.get(tag, ()), key=lambda d: d.coords):
                if bound is not None and dot.max_norm() > _frac(bound):
                    continue
                out.append((tag, dot, self.translations[tag]))
        return out

    def anisotropic_window(self, bound) -> list[Vector]:
        out = []
        for _, dot, trans in self.families(bound):
            for iso in trans.window(bound):
                out.append(self.assemble_root(dot, iso))
        return sorted(out, key=lambda v: v.coords)

    def isotropic_window(self, bound) -> list[Vector]:
        zero_dot = Vector([0] * self.finite_part.rank)
        return sorted(
            (self.assemble_root(zero_dot, iso) for iso in self.isotropic.window(bound)),
            key=lambda v: v.coords,
        )

    def window(self, bound) -> list[Vector]:
        return sorted(
            self.anisotropic_window(bound) + self.isotropic_window(bound),
            key=lambda v: v.coords,
        )

    def reflection_set(self, bound) -> frozenset[Matrix]:
        from .linalg import reflection_matrix

        return frozenset(
            reflection_matrix(self.space, v) for v in self.anisotropic_window(bound)
        )

    def _with(self, **replacements) -> "EarsDescriptor":
        args = {
            "finite_part": self.finite_part,
            "nullity": self.nullity,
            "translations": self.translations,
            "removal_chain": self.removal_chain,
        }
        args.update(replacements)
        clone = EarsDescriptor(**args)
        return clone


def is_root(r: EarsDescriptor, v) -> str:
    """Classify a vector against the root set: anisotropic/isotropic/not_root."""
    if isinstance(v, RootQuery):
        v = v.vector
    return r.classify(v)


# ---------------------------------------------------------------------------
# the four constructions


def _require(cond: bool, message: str):
    if not cond:
        raise ConstraintViolation(message)


def _check_semilattice(s: Semilattice, name: str, need_zero: bool, need_lattice: bool):
    rep = verify_semilattice(s)
    _require(rep.spans, f"{name} translation set does not span the isotropic space")
    _require(rep.closed, f"{name} translation set is not closed under x + 2y")
    if need_zero:
        _require(
            s.contains(Vector([0] * s.ambient)),
            f"0 is missing from the {name} translation set",
        )
    if need_lattice:
        _require(
            s.is_lattice(),
            f"{name} translation set must be a full lattice for this type",
        )


def construct_ears(x, short, long=None, extra=None, removal_chain=()) -> EarsDescriptor:
    """Build a descriptor from a finite type and per-length translation sets.

    short/long/extra hold the isotropic translations of the corresponding
    root-length class; which ones must be present depends on the type.
    Constraint failures raise ConstraintViolation naming the violated
    inclusion; a translation set supplied for an absent length class (or a
    missing one) raises WrongArity.
    """
    finite = _as_finite(x)
    t, rank = finite.type_symbol, finite.rank
    nu = short.ambient

    if t in ("A", "D", "E"):
        if long is not None or extra is not None:
            raise WrongArity(f"{finite.label} takes only a short translation set")
        _check_semilattice(short, "short", True, finite.label != "A1")
        trans = {"short": short}
    elif t in ("B", "C", "F", "G"):
        if long is None or extra is not None:
            raise WrongArity(f"{finite.label} takes short and long translation sets")
        if long.ambient != nu:
            raise RankMismatch("short and long translation sets differ in rank")
        k = 3 if t == "G" else 2
        s_lattice = (t == "C") or t in ("F", "G")
        l_lattice = (t == "B" and rank >= 3) or t in ("F", "G")
        _check_semilattice(short, "short", True, s_lattice)
        _check_semilattice(long, "long", True, l_lattice)
        _require(sum_condition(long, short, k), f"long + {k}*short ⊄ long")
        _require(sum_condition(short, long, 1), "short + long ⊄ short")
        trans = {"short": short, "long": long}
    elif t == "BC" and rank >= 2:
        if long is None or extra is None:
            raise WrongArity(
                f"{finite.label} takes short, long, and extra translation sets"
            )
        if long.ambient != nu or extra.ambient != nu:
            raise RankMismatch("translation sets differ in rank")
        _check_semilattice(short, "short", True, False)
        _check_semilattice(long, "long", True, rank >= 3)
        _check_semilattice(extra, "extra", False, False)
        _require(
            not extra.intersects(short.scaled(2)),
            "extra ∩ 2*short ≠ ∅",
        )
        _require(sum_condition(long, short, 2), "long + 2*short ⊄ long")
        _require(sum_condition(short, long, 1), "short + long ⊄ short")
        _require(sum_condition(extra, long, 2), "extra + 2*long ⊄ extra")
        _require(sum_condition(long, extra, 1), "long + extra ⊄ long")
        trans = {"short": short, "long": long, "extra": extra}
    elif t == "BC":
        if long is not None or extra is None:
            raise WrongArity(
                f"{finite.label} takes short and extra translation sets"
            )
        if extra.ambient != nu:
            raise RankMismatch("translation sets differ in rank")
        _check_semilattice(short, "short", True, False)
        _check_semilattice(extra, "extra", False, False)
        _require(
            not extra.intersects(short.scaled(2)),
            "extra ∩ 2*short ≠ ∅",
        )
        _require(sum_condition(extra, short, 4), "extra + 4*short ⊄ extra")
        _require(sum_condition(short, extra, 1), "short + extra ⊄ short")
        trans = {"short": short, "extra": extra}
    else:
        raise InvalidRank(f"unsupported type {finite.label}")

    return EarsDescriptor(finite, nu, trans, removal_chain)


# ---------------------------------------------------------------------------
# fast windowed membership over integer coordinates


class _Bitmap:
    """Vectorized membership for a union of cosets with integer scale 1."""

    def __init__(self, table: ResidueTable):
        self.period = table.period
        self.dim = table.dim
        flat = np.zeros(table.period**table.dim, dtype=bool)
        radix = table.period ** np.arange(table.dim)
        for r in table.residues:
            flat[int(np.dot(np.array(r, dtype=np.int64), radix))] = True
        self.flat = flat
        self.radix = radix

    def member(self, pts: np.ndarray) -> np.ndarray:
        idx = (np.mod(pts, self.period) * self.radix).sum(axis=-1)
        return self.flat[idx]


def _bitmaps(desc: EarsDescriptor) -> dict | None:
    maps = {}
    for tag, table in desc._tables.items():
        if table is None or table.scale != 1:
            return None
        if table.period ** table.dim > 1 << 22:
            return None
        maps[tag] = _Bitmap(table)
    return maps


def _int_array(vectors: list[Vector]) -> np.ndarray | None:
    try:
        return np.array([[int(c) for c in v.coords] for v in vectors], dtype=np.int64)
    except (TypeError, ValueError):
        return None


# ---------------------------------------------------------------------------
# axiom verification


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    passed: bool
    detail: str
    witnesses: tuple = ()


@dataclass(frozen=True)
class AxiomReport:
    bound: int
    checks: tuple[AxiomCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, axiom: str) -> AxiomCheck:
        return next(c for c in self.checks if c.axiom == axiom)

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"{c.axiom}: {'pass' if c.passed else 'FAIL'} - {c.detail}")
        return "\n".join(lines)


_SCAN = 8  # root strings have length at most 5; leave slack to catch strays


def verify_axioms(r, bound: int = 4, space: AmbientSpace | None = None) -> AxiomReport:
    """Windowed check of the eight defining axioms.

    With a descriptor, membership queries are exact (no window artifacts);
    enumeration is restricted to the max-norm window.  With a finite vector
    set (space required), the set itself is treated as the entire root set.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if isinstance(r, EarsDescriptor):
        return _verify_descriptor(r, bound)
    if space is None:
        raise ValueError("space is required when verifying a plain vector set")
    return _verify_finite_set(frozenset(r), space, bound)


def _verify_descriptor(desc: EarsDescriptor, bound: int) -> AxiomReport:
    checks = []
    space = desc.space
    aniso = desc.anisotropic_window(bound)
    iso = desc.isotropic_window(bound)
    full = aniso + iso
    zero = Vector([0] * space.dim)

    ok = desc.classify(zero) == "isotropic"
    checks.append(
        AxiomCheck("R1", ok, "0 is a root" if ok else "0 is not a root")
    )

    bad = [v for v in full if desc.classify(-v) == "not_root"]
    checks.append(
        AxiomCheck(
            "R2",
            not bad,
            f"negation closure on {len(full)} window roots (window {bound})",
            tuple(bad[:3]),
        )
    )

    rank = _rational_rank(full)
    want = space.nu + space.split[1]
    checks.append(
        AxiomCheck(
            "R3",
            rank == want,
            f"window roots span rank {rank}, expected {want} (window {bound})",
        )
    )

    bad = [v for v in aniso if desc.classify(v * 2) != "not_root"]
    checks.append(
        AxiomCheck(
            "R4",
            not bad,
            f"2*root excluded for {len(aniso)} window roots (window {bound})",
            tuple(bad[:3]),
        )
    )

    checks.append(
        AxiomCheck(
            "R5",
            True,
            "structural: all members lie in a fixed finitely generated "
            "rational lattice, hence discrete",
        )
    )

    checks.append(_check_strings_descriptor(desc, bound))

    present = {dot for _, dot, trans in desc.families(bound) if trans.window(bound)}
    detail, connected = _dot_connectivity(present, desc.finite_part)
    checks.append(AxiomCheck("R7", connected, detail + f" (window {bound})"))

    checks.append(_check_iso_pairing(desc, bound, iso))

    return AxiomReport(bound, tuple(checks))


def _rational_rank(vectors) -> int:
    rows = [list(v.coords) for v in vectors]
    rank = 0
    pivoted = []
    for row in rows:
        for prow, pcol in pivoted:
            if row[pcol] != 0:
                f = row[pcol] / prow[pcol]
                row = [a - f * b for a, b in zip(row, prow)]
        pc = next((j for j, x in enumerate(row) if x != 0), None)
        if pc is not None:
            pivoted.append((row, pc))
            rank += 1
    return rank


def _dot_connectivity(present: set, finite: FiniteRootSystem):
    if not present:
        return "no anisotropic roots in window", False
    nodes = sorted(present, key=lambda d: d.coords)
    seen = {nodes[0]}
    frontier = [nodes[0]]
    while frontier:
        nxt = []
        for a in frontier:
            for b in nodes:
                if b not in seen and finite.pair(a, b) != 0:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    connected = len(seen) == len(nodes)
    return (
        f"non-orthogonality graph on {len(nodes)} root directions is "
        + ("connected" if connected else "disconnected"),
        connected,
    )


def _check_iso_pairing(desc: EarsDescriptor, bound, iso_window) -> AxiomCheck:
    short = desc.translations["short"]
    search = short.window(2 * _frac(bound) + 2)
    bad = []
    for v in iso_window:
        sigma = Vector(desc.space.iso_part(v))
        if not any(short.contains(tau + sigma) for tau in search):
            bad.append(v)
    return AxiomCheck(
        "R8",
        not bad,
        f"every one of {len(iso_window)} window isotropic roots pairs with an "
        f"anisotropic root (window {bound})",
        tuple(bad[:3]),
    )


def _string_profile_targets(desc, da, db):
    """Length-class tag of db + n*da for n in [-_SCAN, _SCAN]."""
    targets = []
    for n in range(-_SCAN, _SCAN + 1):
        d = db + da * n
        if d.is_zero():
            targets.append("isotropic")
        else:
            targets.append(desc.class_of_dot(d))
    return targets


def _check_strings_descriptor(desc: EarsDescriptor, bound: int) -> AxiomCheck:
    """Root strings: membership of b + n*a must form one interval around 0
    whose endpoints satisfy d - u = 2(a,b)/(a,a)."""
    space = desc.space
    finite = desc.finite_part
    bitmaps = _bitmaps(desc)
    zero_dot = Vector([0] * finite.rank)
    fams = desc.families(bound)
    b_fams = fams + [("isotropic", zero_dot, desc.isotropic)]
    pair_count = 0
    witnesses = []

    for tag_a, da, ta in fams:
        a_iso = ta.window(bound)
        if not a_iso:
            continue
        caa = finite.pair(da, da)
        for tag_b, db, tb in b_fams:
            b_iso = tb.window(bound)
            if not b_iso:
                continue
            c = 2 * finite.pair(db, da) / caa
            targets = _string_profile_targets(desc, da, db)
            pair_count += len(a_iso) * len(b_iso)
            arr_a = _int_array(a_iso) if bitmaps is not None else None
            arr_b = _int_array(b_iso) if bitmaps is not None else None
            if arr_a is not None and arr_b is not None:
                bad = _strings_numpy(bitmaps, targets, arr_a, arr_b, c)
                for i, j in bad[:2]:
                    witnesses.append(
                        (
                            desc.assemble_root(da, a_iso[i]),
                            desc.assemble_root(db, b_iso[j]),
                        )
                    )
            else:
                for tau in a_iso:
                    for sigma in b_iso:
                        if not _string_ok_python(desc, targets, tau, sigma, c):
                            witnesses.append(
                                (
                                    desc.assemble_root(da, tau),
                                    desc.assemble_root(db, sigma),
                                )
                            )
            if len(witnesses) > 4:
                break
        if len(witnesses) > 4:
            break

    return AxiomCheck(
        "R6",
        not witnesses,
        f"root strings checked for {pair_count} window pairs, "
        f"scan n in [-{_SCAN}, {_SCAN}] (window {bound})",
        tuple(witnesses[:3]),
    )


def _strings_numpy(bitmaps, targets, arr_a, arr_b, c):
    n1, n2 = len(arr_a), len(arr_b)
    member = np.zeros((2 * _SCAN + 1, n1, n2), dtype=bool)
    for k, tag in enumerate(targets):
        if tag is None:
            continue
        n = k - _SCAN
        pts = arr_b[None, :, :] + n * arr_a[:, None, :]
        member[k] = bitmaps[tag].member(pts)
    if not member[_SCAN].all():
        return list(zip(*np.nonzero(~member[_SCAN])))
    down = np.ones((n1, n2), dtype=bool)
    d = np.zeros((n1, n2), dtype=np.int64)
    for k in range(1, _SCAN + 1):
        down &= member[_SCAN - k]
        d += down
    up = np.ones((n1, n2), dtype=bool)
    u = np.zeros((n1, n2), dtype=np.int64)
    for k in range(1, _SCAN + 1):
        up &= member[_SCAN + k]
        u += up
    total = member.sum(axis=0)
    good = total == d + u + 1
    if c.denominator == 1:
        good &= (d - u) == int(c)
    else:
        good[:] = False
    return list(zip(*np.nonzero(~good)))


def _string_ok_python(desc, targets, tau, sigma, c):
    member = []
    for k, tag in enumerate(targets):
        n = k - _SCAN
        member.append(tag is not None and desc._member(tag, sigma + tau * n))
    if not member[_SCAN]:
        return False
    d = 0
    while d < _SCAN and member[_SCAN - d - 1]:
        d += 1
    u = 0
    while u < _SCAN and member[_SCAN + u + 1]:
        u += 1
    if sum(member) != d + u + 1:
        return False
    return c.denominator == 1 and d - u == c


# -- finite-set mode ---------------------------------------------------------


def _verify_finite_set(roots: frozenset, space: AmbientSpace, bound) -> AxiomReport:
    checks = []
    members = set(roots)
    zero = Vector([0] * space.dim)
    aniso = sorted(
        (v for v in members if not space.is_isotropic(v)), key=lambda v: v.coords
    )
    iso = sorted(
        (v for v in members if space.is_isotropic(v)), key=lambda v: v.coords
    )

    checks.append(AxiomCheck("R1", zero in members, "0 in the given set"))
    bad = [v for v in members if -v not in members]
    checks.append(
        AxiomCheck("R2", not bad, f"negation closure on {len(members)} vectors", tuple(bad[:3]))
    )
    rank = _rational_rank(members)
    want = space.nu + space.split[1]
    checks.append(
        AxiomCheck("R3", rank == want, f"set spans rank {rank}, expected {want}")
    )
    bad = [v for v in aniso if v * 2 in members]
    checks.append(
        AxiomCheck("R4", not bad, f"2*root excluded, {len(aniso)} anisotropic vectors", tuple(bad[:3]))
    )
    checks.append(AxiomCheck("R5", True, "finite sets are discrete"))

    witnesses = []
    pair_count = 0
    for a in aniso:
        caa = space.pair(a, a)
        for b in members:
            pair_count += 1
            c = 2 * space.pair(b, a) / caa
            profile = [b + a * n in members for n in range(-_SCAN, _SCAN + 1)]
            d = 0
            while d < _SCAN and profile[_SCAN - d - 1]:
                d += 1
            u = 0
            while u < _SCAN and profile[_SCAN + u + 1]:
                u += 1
            if sum(profile) != d + u + 1 or c.denominator != 1 or d - u != c:
                witnesses.append((a, b))
        if len(witnesses) > 4:
            break
    checks.append(
        AxiomCheck(
            "R6",
            not witnesses,
            f"root strings inside the set, {pair_count} pairs",
            tuple(witnesses[:3]),
        )
    )

    connected = True
    detail = "no anisotropic vectors"
    if aniso:
        seen = {aniso[0]}
        frontier = [aniso[0]]
        while frontier:
            nxt = []
            for x in frontier:
                for y in aniso:
                    if y not in seen and space.pair(x, y) != 0:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        connected = len(seen) == len(aniso)
        detail = (
            f"non-orthogonality graph on {len(aniso)} vectors is "
            + ("connected" if connected else "disconnected")
        )
    checks.append(AxiomCheck("R7", connected, detail))

    bad = [s for s in iso if not any(a + s in members for a in aniso)]
    checks.append(
        AxiomCheck(
            "R8",
            not bad,
            f"every of {len(iso)} isotropic vectors pairs with an anisotropic one",
            tuple(bad[:3]),
        )
    )
    return AxiomReport(int(bound), tuple(checks))


# ---------------------------------------------------------------------------
# isotropic root closure


def irc(r, space: AmbientSpace | None = None):
    """Isotropic root closure: adjoin all isotropic differences.

    For a descriptor the closure is computed at the coset level and returned
    as a new descriptor carrying the recomputed isotropic part; for a finite
    vector set (space required) the closed finite set is returned.
    """
    if isinstance(r, EarsDescriptor):
        closed = None
        for trans in r.translations.values():
            diff = trans.sum_set(trans.scaled(-1))
            closed = diff if closed is None else closed.union(diff)
        clone = r._with()
        object.__setattr__(clone, "isotropic", closed)
        object.__setattr__(
            clone,
            "_tables",
            {**clone._tables, "isotropic": residue_table(closed)},
        )
        return clone
    if space is None:
        raise ValueError("space is required when closing a plain vector set")
    return irc_window(r, space)


def irc_window(vectors, space: AmbientSpace) -> list[Vector]:
    """Finite-set closure: the set plus all differences lying in the
    isotropic subspace (zero dot and dual parts)."""
    vs = list(vectors)
    out = set(vs)
    for i, a in enumerate(vs):
        for b in vs:
            d = a - b
            if all(c == 0 for c in space.dot_part(d)) and all(
                c == 0 for c in space.dual_part(d)
            ):
                out.add(d)
    return sorted(out, key=lambda v: v.coords)


# ---------------------------------------------------------------------------
# trimming


def trim(r: EarsDescriptor) -> EarsDescriptor:
    """Halve the extra-long roots of a BC-type system, merging them into the
    short class; the result is the reduced-type system with the same
    reflections.  Raises NotBCType away from BC input."""
    if r.finite_part.type_symbol != "BC":
        raise NotBCType(f"trim needs a BC-type system, got {r.finite_part.label}")
    rank = r.finite_part.rank
    merged = r.translations["short"].union(
        r.translations["extra"].scaled(Fraction(1, 2))
    )
    rep = verify_semilattice(merged)
    _require(rep.ok, "short ∪ (1/2)extra is not a semilattice: " + "; ".join(rep.problems))
    if rank == 1:
        return construct_ears(build_finite("A", 1), merged)
    return construct_ears(build_finite("B", rank), merged, r.translations["long"])


# ---------------------------------------------------------------------------
# characterization of anisotropic root sets


@dataclass(frozen=True)
class CharacterizeReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> AxiomCheck:
        return next(c for c in self.checks if c.axiom == name)


def characterize(window, space: AmbientSpace) -> CharacterizeReport:
    """Test a finite window of an alleged anisotropic root set.

    Four hypotheses: closure under its own reflections (images leaving the
    window box are ignored), the image in the dot space is an irreducible
    finite root system, the generated subgroup is a full lattice, and no
    root has its double in the set.  All verdicts are window-scale.
    """
    vs = sorted(set(window), key=lambda v: v.coords)
    checks = []
    box = max((v.max_norm() for v in vs), default=Fraction(0))
    members = {v.coords: v for v in vs}

    iso_members = [v for v in vs if space.is_isotropic(v)]
    groups: dict[tuple, list[Vector]] = {}
    for v in vs:
        groups.setdefault(space.dot_part(v), []).append(v)

    dot_form = _dot_form(space)
    bad = list(iso_members[:3])
    checked = 0
    if not bad:
        dots = {d: Vector(d) for d in groups}
        for da_key, alphas in groups.items():
            da = dots[da_key]
            caa = dot_form.evaluate(da, da)
            for db_key, betas in groups.items():
                db = dots[db_key]
                c = 2 * dot_form.evaluate(db, da) / caa
                img_dot = db - da * c
                if img_dot.max_norm() > box:
                    continue
                for alpha in alphas:
                    ta = Vector(space.iso_part(alpha)) * c
                    for beta in betas:
                        checked += 1
                        img_iso = Vector(space.iso_part(beta)) - ta
                        if img_iso.max_norm() > box:
                            continue
                        img = space.assemble(img_iso.coords, img_dot.coords)
                        if img.coords not in members:
                            bad.append((alpha, beta, img))
                            if len(bad) >= 3:
                                break
                    if len(bad) >= 3:
                        break
                if bad:
                    break
            if bad:
                break
    if not bad:
        detail = (
            f"{checked} reflection images inside the window box "
            f"(norm {box}) are all members"
        )
    elif iso_members:
        detail = "isotropic vector in an allegedly anisotropic set"
    else:
        detail = "reflection image escapes the set"
    checks.append(
        AxiomCheck("reflection_invariance", not bad, detail, tuple(bad[:3]))
    )

    ell = space.split[1]
    dot_set = {Vector(space.dot_part(v)) for v in vs}
    dot_set.discard(Vector([0] * ell))
    finite_ok, finite_detail = _finite_root_system_check(dot_set, space)
    checks.append(AxiomCheck("finite_image", finite_ok, finite_detail))

    from .semilattice import Lattice

    span = Lattice(space.dim, vs)
    dual_zero = all(all(c == 0 for c in space.dual_part(v)) for v in vs)
    checks.append(
        AxiomCheck(
            "full_lattice",
            span.rank == space.nu + ell and dual_zero,
            f"generated subgroup has rank {span.rank}, expected {space.nu + ell}; "
            "finitely generated rational, so discrete",
        )
    )

    doubles = [v for v in vs if (v * 2).coords in members]
    checks.append(
        AxiomCheck(
            "reduced",
            not doubles,
            f"no vector has its double in the set ({len(vs)} vectors)"
            if not doubles
            else "a vector and its double are both present",
            tuple(doubles[:3]),
        )
    )
    return CharacterizeReport(tuple(checks))


def _num_to_json(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vec_to_json(v: Vector) -> list:
    return [_num_to_json(c) for c in v.coords]


def semilattice_to_config(s: Semilattice) -> dict:
    return {
        "basis": [_vec_to_json(row) for row in s.modulus.rows],
        "cosets": [_vec_to_json(c) for c in sorted(s.cosets, key=lambda v: v.coords)],
        "translated": s.translated,
    }


def semilattice_from_config(data: dict, nullity: int) -> Semilattice:
    from .semilattice import Lattice

    basis = [Vector([_frac(x) for x in row]) for row in data["basis"]]
    cosets = [Vector([_frac(x) for x in row]) for row in data["cosets"]]
    if any(v.dim != nullity for v in basis + cosets):
        raise RankMismatch("semilattice data does not match the nullity")
    return Semilattice.from_cosets(
        cosets, Lattice(nullity, basis), bool(data.get("translated", False))
    )


_CONFIG_KEYS = {"short": "S", "long": "L", "extra": "E"}


def descriptor_to_config(r: EarsDescriptor) -> dict:
    out = {
        "type": r.finite_part.label,
        "rank": r.finite_part.rank,
        "nullity": r.nullity,
    }
    for tag, key in _CONFIG_KEYS.items():
        if tag in r.translations:
            out[key] = semilattice_to_config(r.translations[tag])
    return out


def descriptor_from_config(data: dict) -> EarsDescriptor:
    finite = _as_finite(data["type"])
    if "rank" in data and int(data["rank"]) != finite.rank:
        raise WrongArity(
            f"rank {data['rank']} does not match type {data['type']}"
        )
    nullity = int(data["nullity"])
    sets = {}
    for tag, key in _CONFIG_KEYS.items():
        if key in data:
            sets[tag] = semilattice_from_config(data[key], nullity)
    if "short" not in sets:
        raise WrongArity("config is missing the short translation set S")
    return construct_ears(
        finite, sets.get("short"), sets.get("long"), sets.get("extra")
    )


def _dot_form(space: AmbientSpace):
    from .linalg import BilinearForm

    ell = space.split[1]
    gram_rows = [
        [space.form.gram[space.nu + i, space.nu + j] for j in range(ell)]
        for i in range(ell)
    ]
    return BilinearForm(Matrix(gram_rows))


def _finite_root_system_check(dots: set, space: AmbientSpace):
    if not dots:
        return False, "empty image in the dot space"
    ell = space.split[1]
    form = _dot_form(space)

    def pair(a, b):
        return form.evaluate(a, b)

    rank = _rational_rank(dots)
    if rank != ell:
        return False, f"image spans rank {rank}, expected {ell}"
    for a in dots:
        for b in dots:
            n = 2 * pair(b, a) / pair(a, a)
            if n.denominator != 1:
                return False, f"non-integral pairing between {a} and {b}"
            if b - a * n not in dots:
                return False, f"image not closed under the reflection along {a}"
    seen = {next(iter(dots))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for y in dots:
                if y not in seen and pair(x, y) != 0:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    if len(seen) != len(dots):
        return False, "image splits into orthogonal parts"
    return True, f"image is an irreducible finite root system on {len(dots)} roots"

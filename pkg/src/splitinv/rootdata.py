"""Based root data, Weyl groups, pinned automorphisms, and restriction to
the fixed subtorus of a pinned automorphism.

Conventions.  Root data are simply-connected and semisimple: the cocharacter
lattice is spanned by the simple coroots and the character lattice by the
fundamental weights.  Roots are stored by their coordinates in the
simple-root basis, coroots by coordinates in the simple-coroot basis, and
``cartan[i][j] = <alpha_j, alpha_i_vee>``.  Characters restricted to the
fixed subtorus are recorded by their values on the orbit sums of simple
coroots, which form a basis of the fixed cocharacter lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import RootDatumError

Vec = Tuple[int, ...]
Mat = Tuple[Vec, ...]


# ---------------------------------------------------------------------------
# integer matrix helpers
# ---------------------------------------------------------------------------

def _ident(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a: Mat, b: Mat) -> Mat:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _mat_vec(a: Mat, v: Vec) -> Vec:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def _perm_mat(perm: Sequence[int]) -> Mat:
    n = len(perm)
    return tuple(tuple(1 if perm[j] == i else 0 for j in range(n)) for i in range(n))


def _column_negative(mat: Mat, i: int) -> bool:
    """Whether column i of a root-coordinate matrix is a negative root."""
    for row in mat:
        if row[i] > 0:
            return False
        if row[i] < 0:
            return True
    raise RootDatumError("zero column in a Weyl matrix")


# ---------------------------------------------------------------------------
# Cartan matrices
# ---------------------------------------------------------------------------

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


def _cartan_block(family: str, rank: int) -> List[List[int]]:
    if family not in _MIN_RANK:
        raise RootDatumError(f"unsupported family {family!r}; expected one of A, B, C, D")
    if rank < _MIN_RANK[family]:
        raise RootDatumError(f"family {family} requires rank >= {_MIN_RANK[family]}, got {rank}")
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i in range(rank - 1):
        c[i][i + 1] = -1
        c[i + 1][i] = -1
    if family == "B":
        # last simple root short
        c[rank - 1][rank - 2] = -2
    elif family == "C":
        # last simple root long
        c[rank - 2][rank - 1] = -2
    elif family == "D":
        for i, j in ((rank - 2, rank - 1), (rank - 1, rank - 2)):
            c[i][j] = 0
        c[rank - 3][rank - 1] = -1
        c[rank - 1][rank - 3] = -1
    return c


_ROOT_COUNT = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
}


@dataclass(frozen=True)
class Root:
    coords: Vec     # simple-root basis
    coroot: Vec     # simple-coroot basis
    positive: bool
    height: int


class RootDatum:
    """Simply-connected based root datum of a product of classical groups."""

    def __init__(self, families: Sequence[Tuple[str, int]]):
        if not families:
            raise RootDatumError("empty type specification")
        blocks = [_cartan_block(f, r) for f, r in families]
        rank = sum(len(b) for b in blocks)
        cartan = [[0] * rank for _ in range(rank)]
        off = 0
        for b in blocks:
            for i, row in enumerate(b):
                for j, v in enumerate(row):
                    cartan[off + i][off + j] = v
            off += len(b)
        self.families = tuple((f, int(r)) for f, r in families)
        self.rank = rank
        self.cartan: Mat = tuple(tuple(row) for row in cartan)
        self._refl_root = tuple(self._simple_refl_matrix(i, transpose=False)
                                for i in range(rank))
        self._refl_coroot = tuple(self._simple_refl_matrix(i, transpose=True)
                                  for i in range(rank))
        self.roots: Tuple[Root, ...] = self._generate_roots()
        self._root_by_coords: Dict[Vec, Root] = {r.coords: r for r in self.roots}
        expected = sum(_ROOT_COUNT[f](r) for f, r in self.families)
        if len(self.roots) != expected:
            raise RootDatumError("root enumeration does not match the classification count")
        self._weyl_cache: Optional[Tuple["WeylElement", ...]] = None

    # -- construction ------------------------------------------------------

    def _simple_refl_matrix(self, i: int, transpose: bool) -> Mat:
        n = self.rank
        c = self.cartan
        rows = []
        for k in range(n):
            if k != i:
                rows.append(tuple(1 if j == k else 0 for j in range(n)))
            else:
                # s_i subtracts <., alpha_i_vee> (root side) resp. <alpha_i, .>
                # (coroot side) times the basis vector
                rows.append(tuple((1 if j == i else 0) - (c[j][i] if transpose else c[i][j])
                                  for j in range(n)))
        return tuple(rows)

    def _generate_roots(self) -> Tuple[Root, ...]:
        seen: Dict[Vec, Vec] = {}
        frontier = []
        for i in range(self.rank):
            e = tuple(1 if j == i else 0 for j in range(self.rank))
            seen[e] = e
            frontier.append((e, e))
        while frontier:
            nxt = []
            for c, d in frontier:
                for i in range(self.rank):
                    c2 = _mat_vec(self._refl_root[i], c)
                    if c2 not in seen:
                        d2 = _mat_vec(self._refl_coroot[i], d)
                        seen[c2] = d2
                        nxt.append((c2, d2))
            frontier = nxt
        out = []
        for c, d in seen.items():
            pos = self._is_positive(c)
            out.append(Root(c, d, pos, sum(c)))
        out.sort(key=lambda r: (not r.positive, r.height if r.positive else -r.height, r.coords))
        return tuple(out)

    @staticmethod
    def _is_positive(coords: Vec) -> bool:
        for x in coords:
            if x > 0:
                return True
            if x < 0:
                return False
        raise RootDatumError("zero vector is not a root")

    # -- basic queries ------------------------------------------------------

    def root(self, coords: Vec) -> Root:
        try:
            return self._root_by_coords[tuple(coords)]
        except KeyError:
            raise RootDatumError(f"{coords} is not a root") from None

    def is_root(self, coords: Vec) -> bool:
        return tuple(coords) in self._root_by_coords

    @property
    def positive_roots(self) -> Tuple[Root, ...]:
        return tuple(r for r in self.roots if r.positive)

    def simple_root(self, i: int) -> Root:
        return self.root(tuple(1 if j == i else 0 for j in range(self.rank)))

    def pairing(self, root_coords: Vec, coroot_coords: Vec) -> int:
        """<alpha, mu_vee> for alpha in the root basis, mu_vee in the coroot basis."""
        c = self.cartan
        return sum(coroot_coords[i] * c[i][j] * root_coords[j]
                   for i in range(self.rank) for j in range(self.rank))

    def weight_coords(self, root_coords: Vec) -> Vec:
        """Coordinates of a root-lattice element in the fundamental-weight basis."""
        return tuple(sum(self.cartan[i][j] * root_coords[j] for j in range(self.rank))
                     for i in range(self.rank))

    def reflection_in_root(self, coords: Vec) -> "WeylElement":
        """The reflection attached to an arbitrary root, as a Weyl element."""
        r = self.root(coords)
        n = self.rank
        mat = tuple(tuple((1 if j == k else 0)
                          - r.coords[k] * self.pairing(tuple(1 if t == j else 0 for t in range(n)),
                                                       r.coroot)
                          for j in range(n)) for k in range(n))
        comat = tuple(tuple((1 if j == k else 0)
                            - r.coroot[k] * self.pairing(r.coords,
                                                         tuple(1 if t == j else 0 for t in range(n)))
                            for j in range(n)) for k in range(n))
        return WeylElement._from_matrices(self, mat, mat, comat, comat)

    # -- Weyl group ---------------------------------------------------------

    def identity_weyl(self) -> "WeylElement":
        m = _ident(self.rank)
        return WeylElement._from_matrices(self, m, m, m, m)

    def simple_reflection(self, i: int) -> "WeylElement":
        if not 0 <= i < self.rank:
            raise RootDatumError(f"simple reflection index {i} out of range")
        m = self._refl_root[i]
        cm = self._refl_coroot[i]
        return WeylElement._from_matrices(self, m, m, cm, cm)

    def weyl_group(self) -> Tuple["WeylElement", ...]:
        """All Weyl elements (cached)."""
        if self._weyl_cache is None:
            seen = {self.identity_weyl(): None}
            frontier = list(seen)
            while frontier:
                nxt = []
                for w in frontier:
                    for i in range(self.rank):
                        w2 = w * self.simple_reflection(i)
                        if w2 not in seen:
                            seen[w2] = None
                            nxt.append(w2)
                frontier = nxt
            self._weyl_cache = tuple(seen)
        return self._weyl_cache

    def longest_element(self) -> "WeylElement":
        w = self.identity_weyl()
        while True:
            i = next((i for i in range(self.rank)
                      if RootDatum._is_positive(w.act_root(self.simple_root(i).coords))), None)
            if i is None:
                return w
            w = w * self.simple_reflection(i)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"type": [[f, r] for f, r in self.families]}

    @staticmethod
    def from_json(doc: dict) -> "RootDatum":
        try:
            fams = [(str(f), int(r)) for f, r in doc["type"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise RootDatumError(f"malformed root datum document: field 'type': {exc}") from None
        return build_root_datum(fams)

    def __repr__(self):
        return "RootDatum(" + "x".join(f"{f}{r}" for f, r in self.families) + ")"


def build_root_datum(type_spec: Sequence[Tuple[str, int]]) -> RootDatum:
    """Build the simply-connected datum for a product of classical families."""
    return RootDatum(type_spec)


class WeylElement:
    """Weyl group element with canonical (lexicographically least) reduced word."""

    __slots__ = ("datum", "mat", "inv_mat", "comat", "inv_comat", "_word", "_inversions")

    def __init__(self):
        raise RootDatumError("use datum.simple_reflection / analyze_weyl to build Weyl elements")

    @classmethod
    def _from_matrices(cls, datum, mat, inv_mat, comat, inv_comat) -> "WeylElement":
        self = object.__new__(cls)
        self.datum = datum
        self.mat = mat
        self.inv_mat = inv_mat
        self.comat = comat
        self.inv_comat = inv_comat
        self._word = None
        self._inversions = None
        return self

    # -- group structure ----------------------------------------------------

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if other.datum is not self.datum:
            raise RootDatumError("Weyl elements from different data")
        return WeylElement._from_matrices(
            self.datum,
            _mat_mul(self.mat, other.mat),
            _mat_mul(other.inv_mat, self.inv_mat),
            _mat_mul(self.comat, other.comat),
            _mat_mul(other.inv_comat, self.inv_comat),
        )

    def inverse(self) -> "WeylElement":
        return WeylElement._from_matrices(self.datum, self.inv_mat, self.mat,
                                          self.inv_comat, self.comat)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.datum is other.datum \
            and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    # -- actions -------------------------------------------------------------

    def act_root(self, coords: Vec) -> Vec:
        return _mat_vec(self.mat, coords)

    def act_root_inv(self, coords: Vec) -> Vec:
        return _mat_vec(self.inv_mat, coords)

    def act_coroot(self, coords: Vec) -> Vec:
        return _mat_vec(self.comat, coords)

    def act_coroot_inv(self, coords: Vec) -> Vec:
        return _mat_vec(self.inv_comat, coords)

    def act_weight(self, weight: Vec) -> Vec:
        """Action on the fundamental-weight coordinates of a character."""
        n = self.datum.rank
        cols = [self.act_coroot_inv(tuple(1 if k == i else 0 for k in range(n)))
                for i in range(n)]
        return tuple(sum(weight[j] * cols[i][j] for j in range(n)) for i in range(n))

    # -- reduced words -------------------------------------------------------

    @property
    def is_identity(self) -> bool:
        return self.mat == _ident(self.datum.rank)

    @property
    def word(self) -> Tuple[int, ...]:
        """Canonical reduced word (0-based indices), lexicographically least."""
        if self._word is None:
            letters = []
            n = self.datum.rank
            ident = _ident(n)
            inv = self.inv_mat  # tracks (s_i ... w)^{-1} = w^{-1} s_i ...
            while inv != ident:
                i = next(i for i in range(n) if _column_negative(inv, i))
                letters.append(i)
                inv = _mat_mul(inv, self.datum._refl_root[i])
            self._word = tuple(letters)
        return self._word

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def inversions(self) -> Tuple[Root, ...]:
        """R(w) = positive roots sent negative by w^{-1}."""
        if self._inversions is None:
            self._inversions = tuple(
                r for r in self.datum.positive_roots
                if not RootDatum._is_positive(self.act_root_inv(r.coords)))
        return self._inversions

    def __repr__(self):
        return "w[" + ",".join(str(i + 1) for i in self.word) + "]" if self.word else "w[e]"


def analyze_weyl(datum: RootDatum, word: Sequence[int], one_based: bool = False) -> WeylElement:
    """Multiply out a (not necessarily reduced) reflection word and return the
    canonical Weyl element.  Idempotent on canonical words."""
    w = datum.identity_weyl()
    for i in word:
        j = i - 1 if one_based else i
        w = w * datum.simple_reflection(j)
    assert w.length == len(w.inversions)
    return w


# ---------------------------------------------------------------------------
# pinned automorphisms
# ---------------------------------------------------------------------------

class PinnedAutomorphism:
    """Automorphism of the based datum given by a simple-root permutation.

    Preserves the Cartan matrix and hence the positive system; acts on both
    lattices by the same permutation of basis indices.
    """

    def __init__(self, datum: RootDatum, perm: Sequence[int]):
        perm = tuple(perm)
        if sorted(perm) != list(range(datum.rank)):
            raise RootDatumError(f"not a permutation of 0..{datum.rank - 1}: {perm}")
        for i in range(datum.rank):
            for j in range(datum.rank):
                if datum.cartan[perm[i]][perm[j]] != datum.cartan[i][j]:
                    raise RootDatumError("permutation does not preserve the Cartan matrix")
        self.datum = datum
        self.perm = perm
        self.mat = _perm_mat(perm)
        inv = [0] * len(perm)
        for i, p in enumerate(perm):
            inv[p] = i
        self.inv_perm = tuple(inv)
        self.inv_mat = _perm_mat(self.inv_perm)

    @staticmethod
    def identity(datum: RootDatum) -> "PinnedAutomorphism":
        return PinnedAutomorphism(datum, tuple(range(datum.rank)))

    @property
    def order(self) -> int:
        k, p = 1, self.perm
        cur = p
        while cur != tuple(range(len(p))):
            cur = tuple(p[i] for i in cur)
            k += 1
        return k

    @property
    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.datum.rank))

    def act_root(self, coords: Vec) -> Vec:
        return _mat_vec(self.mat, coords)

    def act_root_inv(self, coords: Vec) -> Vec:
        return _mat_vec(self.inv_mat, coords)

    act_coroot = act_root
    act_coroot_inv = act_root_inv

    def act_weyl(self, w: WeylElement) -> WeylElement:
        """Conjugation w -> theta w theta^{-1}."""
        return WeylElement._from_matrices(
            self.datum,
            _mat_mul(self.mat, _mat_mul(w.mat, self.inv_mat)),
            _mat_mul(self.mat, _mat_mul(w.inv_mat, self.inv_mat)),
            _mat_mul(self.mat, _mat_mul(w.comat, self.inv_mat)),
            _mat_mul(self.mat, _mat_mul(w.inv_comat, self.inv_mat)),
        )

    def act_word(self, word: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.perm[i] for i in word)

    def orbits(self) -> Tuple[Tuple[int, ...], ...]:
        """Orbits on simple-root indices, each sorted, ordered by least element."""
        seen, out = set(), []
        for i in range(self.datum.rank):
            if i in seen:
                continue
            orb, j = [], i
            while j not in seen:
                seen.add(j)
                orb.append(j)
                j = self.perm[j]
            out.append(tuple(sorted(orb)))
        return tuple(sorted(out))

    def compose(self, other: "PinnedAutomorphism") -> "PinnedAutomorphism":
        return PinnedAutomorphism(self.datum, tuple(self.perm[other.perm[i]]
                                                    for i in range(self.datum.rank)))

    def power(self, k: int) -> "PinnedAutomorphism":
        k %= self.order
        out = PinnedAutomorphism.identity(self.datum)
        for _ in range(k):
            out = self.compose(out)
        return out

    def commutes_with(self, w: WeylElement) -> bool:
        return self.act_weyl(w) == w

    def to_json(self) -> dict:
        return {"perm": [p + 1 for p in self.perm]}

    @staticmethod
    def from_json(datum: RootDatum, doc: Optional[dict]) -> "PinnedAutomorphism":
        if doc is None:
            return PinnedAutomorphism.identity(datum)
        try:
            perm = [int(p) - 1 for p in doc["perm"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise RootDatumError(f"malformed automorphism document: field 'perm': {exc}") from None
        return PinnedAutomorphism(datum, perm)

    def __repr__(self):
        return f"theta{tuple(p + 1 for p in self.perm)}"


class RootAutomorphism:
    """Composite automorphism w . g of the root system, with w in the Weyl
    group and g a pinned diagram automorphism.  Acts as alpha -> w(g(alpha))."""

    def __init__(self, weyl: WeylElement, diagram: Optional[PinnedAutomorphism] = None):
        self.weyl = weyl
        self.diagram = diagram if diagram is not None \
            else PinnedAutomorphism.identity(weyl.datum)
        self.datum = weyl.datum

    def act_root(self, coords: Vec) -> Vec:
        return self.weyl.act_root(self.diagram.act_root(coords))

    def act_root_inv(self, coords: Vec) -> Vec:
        return self.diagram.act_root_inv(self.weyl.act_root_inv(coords))

    def act_coroot(self, coords: Vec) -> Vec:
        return self.weyl.act_coroot(self.diagram.act_coroot(coords))

    def commutes_with_pinned(self, theta: PinnedAutomorphism) -> bool:
        return (theta.act_weyl(self.weyl) == self.weyl
                and theta.compose(self.diagram).perm == self.diagram.compose(theta).perm)

    def __repr__(self):
        return f"RootAut({self.weyl!r}, {self.diagram!r})"


def inversion_domain(zeta) -> Tuple[Root, ...]:
    """R(zeta) = positive roots alpha with zeta^{-1}(alpha) negative, in the
    fixed (height, lexicographic) iteration order."""
    if isinstance(zeta, WeylElement):
        zeta = RootAutomorphism(zeta)
    elif isinstance(zeta, PinnedAutomorphism):
        zeta = RootAutomorphism(zeta.datum.identity_weyl(), zeta)
    datum = zeta.datum
    out = [r for r in datum.positive_roots
           if not RootDatum._is_positive(zeta.act_root_inv(r.coords))]
    out.sort(key=lambda r: (r.height, r.coords))
    return tuple(out)


# ---------------------------------------------------------------------------
# restriction to the fixed subtorus
# ---------------------------------------------------------------------------

R1, R2, R3 = "R1", "R2", "R3"


@dataclass(frozen=True)
class RestrictedRoot:
    coords: Vec               # values on the orbit sums of simple coroots
    rtype: str                # R1 / R2 / R3
    positive: bool
    orbit: Tuple[Vec, ...]    # the orbit of roots restricting to it
    coroot: Vec               # coroot in the simple-coroot basis of the ambient datum


class RestrictedRootSystem:
    """The image of the root system on the fixed subtorus of a pinned
    automorphism, with types, orbits, and the fixed-subgroup Weyl group."""

    def __init__(self, datum: RootDatum, theta: PinnedAutomorphism):
        if theta.datum is not datum:
            raise RootDatumError("automorphism belongs to a different datum")
        self.datum = datum
        self.theta = theta
        self.simple_orbits = theta.orbits()
        self._assert_coinvariants_torsion_free()
        self._build_roots()
        self._build_restricted_weyl()

    def fixed_cocharacter_basis(self) -> Tuple[Vec, ...]:
        """Basis of the fixed cocharacter sublattice: orbit sums of simple
        coroots, in simple-coroot coordinates."""
        n = self.datum.rank
        return tuple(tuple(1 if i in orb else 0 for i in range(n))
                     for orb in self.simple_orbits)

    @property
    def coinvariant_rank(self) -> int:
        """Rank of the coinvariant character lattice (free; torsion-freeness
        is asserted at construction), equal to the number of orbits."""
        return len(self.simple_orbits)

    # restriction of a character given by fundamental-weight coordinates
    # (the quotient map onto the coinvariant lattice in orbit coordinates)
    def restrict_weight(self, weight: Vec) -> Vec:
        return tuple(sum(weight[i] for i in orb) for orb in self.simple_orbits)

    def restrict_root(self, coords: Vec) -> Vec:
        return self.restrict_weight(self.datum.weight_coords(coords))

    def _assert_coinvariants_torsion_free(self):
        # X*(T)/(theta-1)X*(T) must be free for the fixed subtorus to carry
        # honest character coordinates; check elementary divisors of theta-1.
        from sympy import Matrix
        from sympy.matrices.normalforms import smith_normal_form
        n = self.datum.rank
        m = [[(1 if self.theta.perm[j] == i else 0) - (1 if i == j else 0)
              for j in range(n)] for i in range(n)]
        snf = smith_normal_form(Matrix(m))
        divisors = {abs(snf[i, i]) for i in range(n)}
        if not divisors <= {0, 1}:
            raise RootDatumError("coinvariant character lattice has torsion; "
                                 "datum outside the supported simply-connected range")

    def _build_roots(self):
        datum, theta = self.datum, self.theta
        by_res: Dict[Vec, List[Vec]] = {}
        for r in datum.roots:
            by_res.setdefault(self.restrict_root(r.coords), []).append(r.coords)
        if any(v == tuple([0] * len(self.simple_orbits)) for v in by_res):
            raise RootDatumError("a root restricts to zero")
        all_res = set(by_res)
        pos_res = {self.restrict_root(r.coords) for r in datum.positive_roots}
        neg_res = {self.restrict_root(r.coords) for r in datum.roots if not r.positive}
        if pos_res & neg_res:
            raise RootDatumError("restriction does not separate positive and negative roots")

        def halved(v: Vec) -> Optional[Vec]:
            if all(x % 2 == 0 for x in v):
                return tuple(x // 2 for x in v)
            return None

        restricted = {}
        for res, orbit_roots in sorted(by_res.items()):
            orbit = tuple(sorted(orbit_roots))
            # the theta-orbit of any preimage must be the whole fiber
            fiber = set(orbit)
            probe = {orbit[0]}
            while True:
                nxt = {theta.act_root(c) for c in probe} | probe
                if nxt == probe:
                    break
                probe = nxt
            if probe != fiber:
                raise RootDatumError("orbit/fiber mismatch in restriction")
            double = tuple(2 * x for x in res)
            half = halved(res)
            if double in all_res:
                rtype = R2
            elif half is not None and half in all_res:
                rtype = R3
            else:
                rtype = R1
            nsum = tuple(sum(datum.root(c).coroot[i] for c in orbit)
                         for i in range(datum.rank))
            coroot = nsum if rtype in (R1, R3) else tuple(2 * x for x in nsum)
            restricted[res] = RestrictedRoot(res, rtype, res in pos_res, orbit, coroot)
        self.restricted: Dict[Vec, RestrictedRoot] = restricted
        self.res_rank = len(self.simple_orbits)
        for rr in restricted.values():
            if self.pair_restricted(rr.coords, rr.coroot) != 2:
                raise RootDatumError("restricted coroot normalization failed")
        self.simple_restricted: Tuple[Vec, ...] = tuple(sorted(
            {self.restrict_root(datum.simple_root(i).coords) for i in range(datum.rank)}))
        indecomposable = self._indecomposable_positives()
        if set(self.simple_restricted) != indecomposable:
            raise RootDatumError("images of simple roots are not the simple restricted roots")

    def _indecomposable_positives(self) -> set:
        pos = [v for v, rr in self.restricted.items() if rr.positive]
        pos_set = set(pos)
        out = set()
        for v in pos:
            if not any(tuple(v[i] - u[i] for i in range(len(v))) in pos_set
                       for u in pos if u != v):
                out.add(v)
        return out

    # pairing of a restricted character with a theta-fixed cocharacter
    def pair_restricted(self, res_coords: Vec, coroot_coords: Vec) -> int:
        total = 0
        for o_idx, orb in enumerate(self.simple_orbits):
            m = coroot_coords[orb[0]]
            for i in orb:
                if coroot_coords[i] != m:
                    raise RootDatumError("cocharacter is not theta-fixed")
            total += m * res_coords[o_idx]
        return total

    def reflect_restricted(self, res_coords: Vec, by: Vec) -> Vec:
        rr = self.restricted[by]
        k = self.pair_restricted(res_coords, rr.coroot)
        return tuple(res_coords[i] - k * rr.coords[i] for i in range(self.res_rank))

    @property
    def positive_restricted(self) -> Tuple[Vec, ...]:
        return tuple(sorted(v for v, rr in self.restricted.items() if rr.positive))

    @property
    def indivisible_positive(self) -> Tuple[Vec, ...]:
        return tuple(sorted(v for v, rr in self.restricted.items()
                            if rr.positive and rr.rtype != R3))

    def rtype(self, res_coords: Vec) -> str:
        return self.restricted[tuple(res_coords)].rtype

    @property
    def is_reduced(self) -> bool:
        return all(rr.rtype == R1 for rr in self.restricted.values())

    # -- fixed-subgroup Weyl group -------------------------------------------

    def _res_matrix_of(self, act_weight) -> Mat:
        """Matrix on restricted coordinates of a positivity-preserving action
        on characters commuting with theta, given by its weight-coords action."""
        n = self.datum.rank
        cols = []
        for orb in self.simple_orbits:
            # one orbit representative restricts to the unit vector; the
            # action descends, so any representative gives the same column
            lam = tuple(1 if i == orb[0] else 0 for i in range(n))
            cols.append(self.restrict_weight(act_weight(lam)))
        return tuple(tuple(cols[j][i] for j in range(self.res_rank))
                     for i in range(self.res_rank))

    def restricted_action_of_weyl(self, w: WeylElement) -> Mat:
        if not self.theta.commutes_with(w):
            raise RootDatumError("Weyl element does not commute with theta")
        return self._res_matrix_of(w.act_weight)

    def _build_restricted_weyl(self):
        datum = self.datum
        # image of each simple restricted reflection: longest element of the
        # Levi attached to the fiber of the restricted line
        self.levi_longest: Dict[Vec, WeylElement] = {}
        for beta in self.simple_restricted:
            self.levi_longest[beta] = self._levi(beta).longest
        # enumerate the restricted Weyl group by matrices with reduced words
        gens = {beta: self._reflection_matrix(beta) for beta in self.simple_restricted}
        ident = _ident(self.res_rank)
        words: Dict[Mat, Tuple[int, ...]] = {ident: ()}
        frontier = [ident]
        simple_list = list(self.simple_restricted)
        while frontier:
            nxt = []
            for m in frontier:
                for gi, beta in enumerate(simple_list):
                    m2 = _mat_mul(m, gens[beta])
                    if m2 not in words:
                        words[m2] = words[m] + (gi,)
                        nxt.append(m2)
            frontier = nxt
        self.res_weyl_words = words
        self.res_simple_list = simple_list
        # the isomorphism onto the theta-fixed Weyl subgroup
        self.omega_theta: Dict[WeylElement, Mat] = {}
        for m, word in words.items():
            w = datum.identity_weyl()
            for gi in word:
                w = w * self.levi_longest[simple_list[gi]]
            if not self.theta.commutes_with(w):
                raise RootDatumError("restricted reflection image not theta-fixed")
            if w in self.omega_theta:
                raise RootDatumError("restricted Weyl map is not injective")
            self.omega_theta[w] = m

    def _reflection_matrix(self, beta: Vec) -> Mat:
        cols = []
        for i in range(self.res_rank):
            e = tuple(1 if j == i else 0 for j in range(self.res_rank))
            cols.append(self.reflect_restricted(e, beta))
        return tuple(tuple(cols[j][i] for j in range(self.res_rank))
                     for i in range(self.res_rank))

    def fixed_weyl_subgroup(self) -> Tuple[WeylElement, ...]:
        """Omega^theta, enumerated through the restricted Weyl group."""
        return tuple(self.omega_theta)

    def res_word_of(self, w: WeylElement) -> Tuple[int, ...]:
        """Reduced word in simple restricted reflections for a theta-fixed w."""
        try:
            m = self.omega_theta[w]
        except KeyError:
            raise RootDatumError("element is not in the fixed Weyl subgroup") from None
        return self.res_weyl_words[m]

    def res_inversions(self, act_res_inv) -> Tuple[Vec, ...]:
        """Positive indivisible restricted roots sent negative by the inverse
        of a restricted-space action."""
        out = []
        neg = {v for v, rr in self.restricted.items() if not rr.positive}
        for v in self.indivisible_positive:
            if act_res_inv(v) in neg:
                out.append(v)
        return tuple(out)

    def _levi(self, beta: Vec):
        return levi_component(self, beta)


@dataclass(frozen=True)
class LeviComponent:
    """The Levi attached to a simple restricted root: preimage of the
    restricted line, with its diagram decomposition and longest Weyl element."""

    beta: Vec
    roots: Tuple[Vec, ...]             # all roots of the Levi
    simples: Tuple[Vec, ...]           # indecomposable positives
    components: Tuple[Tuple[Vec, ...], ...]  # simples grouped by diagram component
    kind: str                          # "A1" or "A2"
    longest: WeylElement


def restrict_root_system(datum: RootDatum, theta: PinnedAutomorphism) -> RestrictedRootSystem:
    """Restriction of the root system to the fixed subtorus of theta."""
    return RestrictedRootSystem(datum, theta)


def levi_component(rrs: RestrictedRootSystem, beta) -> LeviComponent:
    """Levi subgroup data for a simple restricted root."""
    beta = tuple(beta)
    if beta not in rrs.simple_restricted:
        raise RootDatumError(f"{beta} is not a simple restricted root")
    datum = rrs.datum
    line = set()
    for v, rr in rrs.restricted.items():
        q = _integer_ratio(v, beta)
        if q is not None:
            line.add(v)
    roots = tuple(sorted(c for v in line for c in rrs.restricted[v].orbit))
    root_set = set(roots)
    pos = [c for c in roots if datum.root(c).positive]
    pos_set = set(pos)
    simples = tuple(sorted(
        c for c in pos
        if not any(tuple(c[i] - u[i] for i in range(datum.rank)) in pos_set
                   for u in pos if u != c)))
    # group the simples into diagram components (union of linked pieces)
    comp_of: Dict[Vec, int] = {}
    comps: List[List[Vec]] = []
    for c in simples:
        linked = sorted({comp_of[u] for u in simples if u in comp_of
                         and datum.pairing(c, datum.root(u).coroot) != 0})
        if not linked:
            comp_of[c] = len(comps)
            comps.append([c])
        else:
            tgt = linked[0]
            comps[tgt].append(c)
            comp_of[c] = tgt
            for extra in linked[1:]:
                for u in comps[extra]:
                    comp_of[u] = tgt
                comps[tgt].extend(comps[extra])
                comps[extra] = []
    components = tuple(sorted(tuple(sorted(c)) for c in comps if c))
    sizes = {len(c) for c in components}
    if sizes == {1}:
        kind = "A1"
    elif sizes == {2}:
        kind = "A2"
    else:
        raise RootDatumError("Levi component is not a union of A1 or A2 diagrams")
    # sanity: component root counts match the diagram type
    per_comp = 2 if kind == "A1" else 6
    if len(roots) != per_comp * len(components):
        raise RootDatumError("Levi root count does not match its diagram")
    # longest element of the Levi Weyl group
    w = datum.identity_weyl()
    while True:
        delta = next((c for c in simples
                      if RootDatum._is_positive(w.act_root(c))), None)
        if delta is None:
            break
        w = w * datum.reflection_in_root(delta)
    return LeviComponent(beta, roots, simples, components, kind, w)


def _integer_ratio(v: Vec, beta: Vec) -> Optional[int]:
    """q with v == q*beta over the integers (q may be negative), else None."""
    qs = set()
    for a, b in zip(v, beta):
        if b == 0:
            if a != 0:
                return None
        else:
            if a % b:
                return None
            qs.add(a // b)
    if len(qs) != 1:
        return None
    return qs.pop()


# ---------------------------------------------------------------------------
# JSON entry points
# ---------------------------------------------------------------------------

def datum_and_theta_from_json(doc: dict) -> Tuple[RootDatum, PinnedAutomorphism]:
    datum = RootDatum.from_json(doc)
    theta = PinnedAutomorphism.from_json(datum, doc.get("theta"))
    return datum, theta

"""Finite group engine: closure, classes, centralizers, twisted conjugacy.

Elements are opaque hashable byte keys; an ElementKind supplies identity,
multiplication and inversion on keys.  Kinds exist for field matrices,
signed permutations, integer lattice matrices, abelian tuples, wreath
elements and (semi)direct products, so matrix groups, Weyl groups and
twisted-coset extensions G x| <sigma> all run through the same machinery.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Optional, Sequence

from .matrix import MatSpace

CLOSURE_BOUND = 2_000_000


class GroupTooLarge(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Element kinds
# ---------------------------------------------------------------------------

class MatrixKind:
    """n x n invertible matrices over a finite field (see MatSpace)."""

    def __init__(self, space: MatSpace):
        self.space = space
        self.identity = space.identity
        self.key_size = space.key_size

    def mul(self, a: bytes, b: bytes) -> bytes:
        return self.space.mul(a, b)

    def inv(self, a: bytes) -> bytes:
        return self.space.inv(a)

    def describe(self) -> str:
        return self.space.describe()


class SignedPermKind:
    """Signed permutations of {±1, ..., ±l}, stored as images of 1..l."""

    def __init__(self, l: int):
        self.l = l
        self.identity = self.encode(tuple(range(1, l + 1)))
        self.key_size = l

    def encode(self, images: Sequence[int]) -> bytes:
        return struct.pack(f"{self.l}b", *images)

    def decode(self, key: bytes) -> tuple[int, ...]:
        return struct.unpack(f"{self.l}b", key)

    def mul(self, a: bytes, b: bytes) -> bytes:
        """Composition a∘b under the left action (ab)(i) = a(b(i))."""
        ia, ib = self.decode(a), self.decode(b)
        out = []
        for i in range(self.l):
            j = ib[i]
            out.append(ia[j - 1] if j > 0 else -ia[-j - 1])
        return self.encode(out)

    def inv(self, a: bytes) -> bytes:
        ia = self.decode(a)
        out = [0] * self.l
        for i, j in enumerate(ia, start=1):
            if j > 0:
                out[j - 1] = i
            else:
                out[-j - 1] = -i
        return self.encode(out)

    def act(self, key: bytes, i: int) -> int:
        """Image of the signed point i."""
        images = self.decode(key)
        return images[i - 1] if i > 0 else -images[-i - 1]

    def matrix(self, key: bytes) -> list[list[int]]:
        """Ambient l x l signed permutation matrix (column i carries e_i to ±e_j)."""
        images = self.decode(key)
        out = [[0] * self.l for _ in range(self.l)]
        for i, j in enumerate(images):
            if j > 0:
                out[j - 1][i] = 1
            else:
                out[-j - 1][i] = -1
        return out

    def describe(self) -> str:
        return f"sperm({self.l})"


class IntMatrixKind:
    """Integer lattice matrices with small entries (|entry| < 128)."""

    def __init__(self, n: int):
        self.n = n
        self.identity = self.encode([[1 if i == j else 0 for j in range(n)] for i in range(n)])
        self.key_size = n * n

    def encode(self, rows) -> bytes:
        flat = [rows[i][j] for i in range(self.n) for j in range(self.n)]
        if any(abs(v) > 127 for v in flat):
            raise ValueError("lattice matrix entry out of int8 range")
        return struct.pack(f"{self.n * self.n}b", *flat)

    def decode(self, key: bytes) -> list[list[int]]:
        flat = struct.unpack(f"{self.n * self.n}b", key)
        return [list(flat[i * self.n:(i + 1) * self.n]) for i in range(self.n)]

    def mul(self, a: bytes, b: bytes) -> bytes:
        from .matrix import imat_mul

        return self.encode(imat_mul(self.decode(a), self.decode(b)))

    def inv(self, a: bytes) -> bytes:
        from .matrix import imat_inv_unimodular

        return self.encode(imat_inv_unimodular(self.decode(a)))

    def describe(self) -> str:
        return f"imat({self.n})"


class AbelianKind:
    """Tuples (a_1, ..., a_r) with componentwise addition mod the moduli."""

    def __init__(self, moduli: Sequence[int]):
        self.moduli = tuple(int(m) for m in moduli)
        self.r = len(self.moduli)
        self.identity = self.encode((0,) * self.r)
        self.key_size = 4 * self.r

    def encode(self, values: Sequence[int]) -> bytes:
        return struct.pack(f"<{self.r}i", *(v % m for v, m in zip(values, self.moduli)))

    def decode(self, key: bytes) -> tuple[int, ...]:
        return struct.unpack(f"<{self.r}i", key)

    def mul(self, a: bytes, b: bytes) -> bytes:
        va, vb = self.decode(a), self.decode(b)
        return self.encode(tuple(x + y for x, y in zip(va, vb)))

    def inv(self, a: bytes) -> bytes:
        return self.encode(tuple(-x for x in self.decode(a)))

    def describe(self) -> str:
        return f"ab{self.moduli}"


class WreathKind:
    """C_m wr S_n: pairs (f, pi) with (f,pi)(g,tau) = (f + g∘pi^{-1}, pi∘tau)."""

    def __init__(self, m: int, n: int):
        self.m, self.n = m, n
        self.identity = self.encode((0,) * n, tuple(range(n)))
        self.key_size = 2 * n

    def encode(self, values: Sequence[int], perm: Sequence[int]) -> bytes:
        return struct.pack(f"{2 * self.n}B", *[v % self.m for v in values], *perm)

    def decode(self, key: bytes):
        flat = struct.unpack(f"{2 * self.n}B", key)
        return flat[: self.n], flat[self.n:]

    def mul(self, a: bytes, b: bytes) -> bytes:
        fa, pa = self.decode(a)
        fb, pb = self.decode(b)
        inv_pa = [0] * self.n
        for i, j in enumerate(pa):
            inv_pa[j] = i
        vals = tuple(fa[i] + fb[inv_pa[i]] for i in range(self.n))
        perm = tuple(pa[pb[i]] for i in range(self.n))
        return self.encode(vals, perm)

    def inv(self, a: bytes) -> bytes:
        fa, pa = self.decode(a)
        inv_pa = [0] * self.n
        for i, j in enumerate(pa):
            inv_pa[j] = i
        vals = tuple(-fa[pa[i]] for i in range(self.n))
        return self.encode(vals, tuple(inv_pa))

    def describe(self) -> str:
        return f"wr({self.m},{self.n})"


class PairKind:
    """Direct product of two kinds (componentwise multiplication)."""

    def __init__(self, left, right):
        self.left, self.right = left, right
        self.identity = left.identity + right.identity
        self.key_size = left.key_size + right.key_size
        self._cut = left.key_size

    def split(self, key: bytes):
        return key[: self._cut], key[self._cut:]

    def join(self, ka: bytes, kb: bytes) -> bytes:
        return ka + kb

    def mul(self, a: bytes, b: bytes) -> bytes:
        a1, a2 = self.split(a)
        b1, b2 = self.split(b)
        return self.left.mul(a1, b1) + self.right.mul(a2, b2)

    def inv(self, a: bytes) -> bytes:
        a1, a2 = self.split(a)
        return self.left.inv(a1) + self.right.inv(a2)

    def describe(self) -> str:
        return f"({self.left.describe()}x{self.right.describe()})"


class SemidirectKind:
    """N x| H for an action act(h_key, n_key) -> n_key by automorphisms of N."""

    def __init__(self, normal, top, act: Callable[[bytes, bytes], bytes]):
        self.normal, self.top = normal, top
        self.act = act
        self.identity = normal.identity + top.identity
        self.key_size = normal.key_size + top.key_size
        self._cut = normal.key_size

    def split(self, key: bytes):
        return key[: self._cut], key[self._cut:]

    def join(self, kn: bytes, kh: bytes) -> bytes:
        return kn + kh

    def mul(self, a: bytes, b: bytes) -> bytes:
        n1, h1 = self.split(a)
        n2, h2 = self.split(b)
        return self.normal.mul(n1, self.act(h1, n2)) + self.top.mul(h1, h2)

    def inv(self, a: bytes) -> bytes:
        n1, h1 = self.split(a)
        hi = self.top.inv(h1)
        return self.act(hi, self.normal.inv(n1)) + hi

    def describe(self) -> str:
        return f"({self.normal.describe()}x|{self.top.describe()})"


# ---------------------------------------------------------------------------
# FinGroup
# ---------------------------------------------------------------------------

@dataclass
class ClassData:
    reps: list
    sizes: list
    class_of: dict
    inverse_class: list

    @property
    def n(self) -> int:
        return len(self.reps)


class FinGroup:
    def __init__(self, kind, gen_keys: list, elements: list, index: dict):
        self.kind = kind
        self.gens = list(gen_keys)
        self.elements = elements
        self.index = index
        self.order = len(elements)
        self._classes: Optional[ClassData] = None
        self._tables: dict = {}  # character tables keyed by ell
        self._word_dag = None

    # -- construction -----------------------------------------------------
    @classmethod
    def generate(cls, kind, gen_keys: Iterable[bytes], bound: int = CLOSURE_BOUND) -> "FinGroup":
        gens = []
        seen = set()
        for g in gen_keys:
            if g not in seen and g != kind.identity:
                seen.add(g)
                gens.append(g)
        elements = [kind.identity]
        index = {kind.identity: 0}
        parents = [(-1, -1)]
        mul = kind.mul
        frontier = [kind.identity]
        while frontier:
            new_frontier = []
            for x in frontier:
                for gi, g in enumerate(gens):
                    y = mul(x, g)
                    if y not in index:
                        if len(elements) >= bound:
                            raise GroupTooLarge(f"group exceeds bound {bound}")
                        index[y] = len(elements)
                        elements.append(y)
                        parents.append((index[x], gi))
                        new_frontier.append(y)
            frontier = new_frontier
        grp = cls(kind, gens, elements, index)
        grp._word_dag = parents
        return grp

    @classmethod
    def from_elements(cls, kind, elements: Iterable[bytes], gens: Optional[list] = None) -> "FinGroup":
        elements = list(dict.fromkeys(elements))
        if kind.identity in elements:
            elements.remove(kind.identity)
        elements = [kind.identity] + elements
        index = {e: i for i, e in enumerate(elements)}
        grp = cls(kind, gens or [], elements, index)
        return grp

    def ensure_gens(self) -> list:
        """A small generating set, derived greedily if not supplied.

        Caller-supplied generators are trusted (constructors pass exact ones);
        use _gens_generate() to double-check when in doubt."""
        if self.gens:
            return self.gens
        gens: list = []
        have = {self.kind.identity}
        for x in self.elements:
            if x in have:
                continue
            gens.append(x)
            have = _closure_set(self.kind, gens, limit=self.order)
            if len(have) == self.order:
                break
        self.gens = gens
        return gens

    def _gens_generate(self) -> bool:
        return len(_closure_set(self.kind, self.gens, limit=self.order)) == self.order

    def ensure_dag(self):
        """(parent, gen) derivation for each element, rebuilt if needed."""
        if self._word_dag is not None and len(self._word_dag) == self.order:
            return self._word_dag
        gens = self.ensure_gens()
        regen = FinGroup.generate(self.kind, gens)
        if regen.order != self.order:
            raise AssertionError("generating set does not generate the group")
        # re-align to our element order: easier to adopt regen's order
        self.elements = regen.elements
        self.index = regen.index
        self._word_dag = regen._word_dag
        self._classes = None
        return self._word_dag

    # -- basics -----------------------------------------------------------
    def __contains__(self, key: bytes) -> bool:
        return key in self.index

    def __len__(self) -> int:
        return self.order

    def mul(self, a: bytes, b: bytes) -> bytes:
        return self.kind.mul(a, b)

    def inv(self, a: bytes) -> bytes:
        return self.kind.inv(a)

    def conj(self, g: bytes, x: bytes) -> bytes:
        """g^x = x^{-1} g x."""
        return self.kind.mul(self.kind.mul(self.kind.inv(x), g), x)

    @property
    def identity(self) -> bytes:
        return self.kind.identity

    def power(self, a: bytes, n: int) -> bytes:
        if n < 0:
            return self.power(self.kind.inv(a), -n)
        out = self.kind.identity
        base = a
        while n:
            if n & 1:
                out = self.kind.mul(out, base)
            base = self.kind.mul(base, base)
            n >>= 1
        return out

    def element_order(self, a: bytes) -> int:
        n, x = 1, a
        while x != self.kind.identity:
            x = self.kind.mul(x, a)
            n += 1
        return n

    def exponent(self) -> int:
        cls = self.conjugacy_classes()
        e = 1
        for rep in cls.reps:
            o = self.element_order(rep)
            e = e * o // gcd(e, o)
        return e

    def is_abelian(self) -> bool:
        gens = self.ensure_gens()
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def commutator(self, a: bytes, b: bytes) -> bytes:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    # -- classes -----------------------------------------------------------
    def conjugacy_classes(self) -> ClassData:
        if self._classes is not None:
            return self._classes
        gens = self.ensure_gens()
        gen_pairs = [(g, self.kind.inv(g)) for g in gens]
        mul = self.kind.mul
        class_of: dict = {}
        reps, sizes = [], []
        for start in self.elements:
            if start in class_of:
                continue
            ci = len(reps)
            reps.append(start)
            class_of[start] = ci
            orbit = [start]
            qi = 0
            while qi < len(orbit):
                x = orbit[qi]
                qi += 1
                for g, gi in gen_pairs:
                    y = mul(mul(gi, x), g)
                    if y not in class_of:
                        class_of[y] = ci
                        orbit.append(y)
            sizes.append(len(orbit))
        inverse_class = [class_of[self.kind.inv(r)] for r in reps]
        assert sum(sizes) == self.order
        self._classes = ClassData(reps, sizes, class_of, inverse_class)
        return self._classes

    def class_index(self, key: bytes) -> int:
        return self.conjugacy_classes().class_of[key]

    # -- subgroups ----------------------------------------------------------
    def subgroup(self, gen_keys: Iterable[bytes]) -> "FinGroup":
        sub = FinGroup.generate(self.kind, gen_keys, bound=self.order + 1)
        for k in sub.gens:
            if k not in self.index:
                raise ValueError("generator not in ambient group")
        return sub

    def centralizer(self, keys: Iterable[bytes] | bytes) -> "FinGroup":
        if isinstance(keys, bytes):
            keys = [keys]
        keys = list(keys)
        mul = self.kind.mul
        elems = [g for g in self.elements if all(mul(g, s) == mul(s, g) for s in keys)]
        return FinGroup.from_elements(self.kind, elems)

    def center(self) -> "FinGroup":
        return self.centralizer(self.ensure_gens())

    def normalizer_of(self, sub: "FinGroup") -> "FinGroup":
        sgens = sub.ensure_gens() or [self.kind.identity]
        mul, inv = self.kind.mul, self.kind.inv
        out = []
        for g in self.elements:
            gi = inv(g)
            if all(mul(mul(g, s), gi) in sub.index for s in sgens):
                out.append(g)
        return FinGroup.from_elements(self.kind, out)

    def is_subgroup(self, sub: "FinGroup") -> bool:
        return all(k in self.index for k in sub.elements)

    def is_normal(self, sub: "FinGroup") -> bool:
        gens = self.ensure_gens()
        mul, inv = self.kind.mul, self.kind.inv
        return all(mul(mul(g, s), inv(g)) in sub.index
                   for g in gens for s in sub.ensure_gens())

    def left_transversal(self, sub: "FinGroup") -> list:
        """Coset representatives of sub in self, and the coset map."""
        reps = []
        coset_of: dict = {}
        mul = self.kind.mul
        for x in self.elements:
            if x in coset_of:
                continue
            reps.append(x)
            for y in sub.elements:
                coset_of[mul(x, y)] = x
        assert len(coset_of) == self.order
        self._coset_of = coset_of
        return reps

    def normal_closure(self, seed_keys: Iterable[bytes]) -> "FinGroup":
        gens = self.ensure_gens()
        mul, inv = self.kind.mul, self.kind.inv
        current = list(dict.fromkeys(seed_keys))
        while True:
            sub = FinGroup.generate(self.kind, current, bound=self.order + 1)
            new = []
            for g in gens:
                gi = inv(g)
                for s in sub.ensure_gens():
                    c = mul(mul(g, s), gi)
                    if c not in sub.index:
                        new.append(c)
            if not new:
                return sub
            current = sub.gens + new

    def derived_subgroup(self) -> "FinGroup":
        gens = self.ensure_gens()
        comms = [self.commutator(a, b) for a in gens for b in gens]
        return self.normal_closure(comms)

    def sylow_subgroup(self, p: int) -> "FinGroup":
        target = 1
        n = self.order
        while n % p == 0:
            target *= p
            n //= p
        if target == 1:
            return FinGroup.from_elements(self.kind, [])

        def p_part(x: bytes) -> bytes:
            o = self.element_order(x)
            opp = o
            while opp % p == 0:
                opp //= p
            return self.power(x, opp)

        best = next(x for x in self.elements
                    if (y := p_part(x)) != self.identity)
        current = self.subgroup([p_part(best)])
        while current.order < target:
            nz = self.normalizer_of(current)
            grew = False
            for x in nz.elements:
                y = p_part(x)
                if y not in current.index and y != self.identity:
                    cand = self.subgroup(current.ensure_gens() + [y])
                    if cand.order % p == 0 and cand.order > current.order and _is_p_group(cand, p):
                        current = cand
                        grew = True
                        break
            if not grew:
                raise AssertionError("Sylow construction stalled")
        return current


def _is_p_group(g: FinGroup, p: int) -> bool:
    n = g.order
    while n % p == 0:
        n //= p
    return n == 1


def _closure_set(kind, gens, limit=None) -> set:
    seen = {kind.identity}
    frontier = [kind.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = kind.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if limit is not None and len(seen) > limit:
                        return seen
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# Automorphisms and twisted conjugacy
# ---------------------------------------------------------------------------

class GroupAutomorphism:
    """Automorphism of a FinGroup given by a key map; validated on demand."""

    def __init__(self, fn: Callable[[bytes], bytes], name: str = "auto"):
        self.fn = fn
        self.name = name

    def __call__(self, key: bytes) -> bytes:
        return self.fn(key)

    @classmethod
    def identity(cls) -> "GroupAutomorphism":
        return cls(lambda k: k, "id")

    @classmethod
    def inner(cls, group: FinGroup, t: bytes, name: str = "inner") -> "GroupAutomorphism":
        ti = group.kind.inv(t)
        mul = group.kind.mul
        return cls(lambda k: mul(mul(t, k), ti), name)

    @classmethod
    def from_gen_images(cls, group: FinGroup, images: dict, name: str = "auto") -> "GroupAutomorphism":
        dag = group.ensure_dag()
        table: dict = {group.identity: group.identity}
        mul = group.kind.mul
        for i in range(1, group.order):
            parent, gi = dag[i]
            g = group.gens[gi]
            table[group.elements[i]] = mul(table[group.elements[parent]], images[g])
        return cls(lambda k: table[k], name)

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        return GroupAutomorphism(lambda k: self.fn(other.fn(k)), f"{self.name}∘{other.name}")

    def validate(self, group: FinGroup, sample: int = 64) -> bool:
        """Bijective homomorphism check: exact for |G| <= 1e5, sampled above."""
        mul = group.kind.mul
        gens = group.ensure_gens()
        if group.order <= 100_000:
            img = set()
            for x in group.elements:
                y = self.fn(x)
                if y not in group.index:
                    return False
                img.add(y)
            if len(img) != group.order:
                return False
            for x in group.elements[: min(group.order, 2048)]:
                for g in gens:
                    if self.fn(mul(x, g)) != mul(self.fn(x), self.fn(g)):
                        return False
            return True
        import random

        rng = random.Random(0xC0FFEE)
        picks = [group.elements[rng.randrange(group.order)] for _ in range(sample)]
        return all(self.fn(mul(a, b)) == mul(self.fn(a), self.fn(b)) for a in picks for b in gens)

    def class_perm(self, group: FinGroup) -> list[int]:
        """Permutation induced on conjugacy classes; raises if not one."""
        cls = group.conjugacy_classes()
        out = []
        for rep in cls.reps:
            y = self.fn(rep)
            if y not in cls.class_of:
                raise ValueError("automorphism image leaves the group")
            out.append(cls.class_of[y])
        if sorted(out) != list(range(cls.n)):
            raise ValueError("map does not permute conjugacy classes")
        return out

    def order_on(self, group: FinGroup) -> int:
        gens = group.ensure_gens()
        n = 1
        cur = {g: self.fn(g) for g in gens}
        while any(cur[g] != g for g in gens):
            cur = {g: self.fn(cur[g]) for g in gens}
            n += 1
            if n > group.order:
                raise AssertionError("automorphism order exceeds group order")
        return n


@dataclass
class TwistedClassSet:
    group: FinGroup
    classes: list

    @property
    def count(self) -> int:
        return len(self.classes)


def twisted_classes(h: FinGroup, sigma: GroupAutomorphism) -> TwistedClassSet:
    """Partition of H under h' ~ h'' iff h'' = g^{-1} h' sigma(g) for some g."""
    gens = h.ensure_gens()
    moves = [(h.inv(g), sigma(g)) for g in gens]
    mul = h.kind.mul
    seen: dict = {}
    classes = []
    for start in h.elements:
        if start in seen:
            continue
        orbit = [start]
        seen[start] = True
        qi = 0
        while qi < len(orbit):
            x = orbit[qi]
            qi += 1
            for gi, sg in moves:
                y = mul(mul(gi, x), sg)
                if y not in seen:
                    seen[y] = True
                    orbit.append(y)
        classes.append(orbit)
    return TwistedClassSet(h, classes)


def orbits_under_conjugation(kind, seeds: Iterable[bytes], conjugator_gens: list) -> list:
    """Orbits of a set of keys under conjugation by the given generators."""
    pairs = [(kind.inv(g), g) for g in conjugator_gens]
    mul = kind.mul
    seen: set = set()
    out = []
    for start in seeds:
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        qi = 0
        while qi < len(orbit):
            x = orbit[qi]
            qi += 1
            for gi, g in pairs:
                y = mul(mul(gi, x), g)
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
        out.append(orbit)
    return out


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def closure(kind, generators: Iterable[bytes], bound: int = CLOSURE_BOUND) -> FinGroup:
    """Spec-level closure entry point with explicit size failure."""
    return FinGroup.generate(kind, generators, bound=bound)


def cyclic_group(n: int) -> FinGroup:
    kind = AbelianKind((n,))
    return FinGroup.generate(kind, [kind.encode((1,))])


def abelian_group(moduli: Sequence[int]) -> FinGroup:
    kind = AbelianKind(moduli)
    gens = []
    for i in range(len(moduli)):
        v = [0] * len(moduli)
        v[i] = 1
        gens.append(kind.encode(v))
    return FinGroup.generate(kind, gens)


def wreath_group(m: int, n: int) -> FinGroup:
    """C_m wr S_n."""
    kind = WreathKind(m, n)
    gens = [kind.encode([1] + [0] * (n - 1), tuple(range(n)))]
    if n >= 2:
        gens.append(kind.encode([0] * n, (1, 0) + tuple(range(2, n))))
    if n >= 3:
        gens.append(kind.encode([0] * n, tuple(range(1, n)) + (0,)))
    return FinGroup.generate(kind, gens)


def wreath_product_subgroup(m: int, n: int, base_orders: Sequence[int],
                            blocks: Sequence[Sequence[int]]) -> FinGroup:
    """X_0 x| K <= C_m wr S_n: X_0 = prod of the subgroups of order base_orders[i],
    K the Young subgroup on the given blocks (must respect base_orders)."""
    kind = WreathKind(m, n)
    gens = []
    for i, o in enumerate(base_orders):
        if m % o:
            raise ValueError("base order must divide m")
        if o > 1:
            v = [0] * n
            v[i] = m // o
            gens.append(kind.encode(v, tuple(range(n))))
    for block in blocks:
        bl = sorted(block)
        for a, b in zip(bl, bl[1:]):
            if base_orders[a] != base_orders[b]:
                raise ValueError("Young block mixes distinct base subgroups")
            perm = list(range(n))
            perm[a], perm[b] = perm[b], perm[a]
            gens.append(kind.encode([0] * n, tuple(perm)))
    if not gens:
        return FinGroup.from_elements(kind, [])
    return FinGroup.generate(kind, gens)


def direct_product(g: FinGroup, h: FinGroup) -> FinGroup:
    kind = PairKind(g.kind, h.kind)
    gens = [kind.join(x, h.identity) for x in g.ensure_gens()]
    gens += [kind.join(g.identity, y) for y in h.ensure_gens()]
    return FinGroup.generate(kind, gens)


def semidirect_product(n_grp: FinGroup, h_grp: FinGroup,
                       act: Callable[[bytes, bytes], bytes]) -> FinGroup:
    kind = SemidirectKind(n_grp.kind, h_grp.kind, act)
    gens = [kind.join(x, h_grp.identity) for x in n_grp.ensure_gens()]
    gens += [kind.join(n_grp.identity, y) for y in h_grp.ensure_gens()]
    return FinGroup.generate(kind, gens)


def cyclic_extension(g: FinGroup, sigma: GroupAutomorphism, r: int) -> FinGroup:
    """G x| <c> with c of order r acting by sigma (sigma^r must be inner-trivial
    as a key map, i.e. literally the identity on keys)."""
    top = AbelianKind((r,))
    powers = [GroupAutomorphism.identity()]
    for _ in range(r - 1):
        powers.append(powers[-1].compose(sigma))

    def act(h_key: bytes, n_key: bytes) -> bytes:
        (i,) = top.decode(h_key)
        return powers[i % r](n_key)

    kind = SemidirectKind(g.kind, top, act)
    elements = [kind.join(x, top.encode((i,))) for i in range(r) for x in g.elements]
    gens = [kind.join(x, top.identity) for x in g.ensure_gens()]
    gens.append(kind.join(g.identity, top.encode((1,))))
    grp = FinGroup.from_elements(kind, elements, gens=gens)
    return grp


def lift_to_extension(ext: FinGroup, key: bytes, i: int = 0) -> bytes:
    kind = ext.kind
    return kind.join(key, kind.top.encode((i,)))


# ---------------------------------------------------------------------------
# Small structural utilities
# ---------------------------------------------------------------------------

def all_subgroups(g: FinGroup, max_order: int = 200) -> list[FinGroup]:
    """Every subgroup, by join-closure of cyclic subgroups. Desk scale only."""
    if g.order > max_order:
        raise ValueError("group too large for exhaustive subgroup enumeration")
    subs: dict[frozenset, FinGroup] = {}
    triv = FinGroup.from_elements(g.kind, [])
    subs[frozenset(triv.elements)] = triv
    for x in g.elements:
        s = g.subgroup([x])
        subs.setdefault(frozenset(s.elements), s)
    changed = True
    while changed:
        changed = False
        items = list(subs.values())
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                a, b = items[i], items[j]
                if a.is_subgroup(b) or b.is_subgroup(a):
                    continue
                joined = g.subgroup(a.ensure_gens() + b.ensure_gens())
                fs = frozenset(joined.elements)
                if fs not in subs:
                    subs[fs] = joined
                    changed = True
    return list(subs.values())


def elementary_abelian_subgroups(g: FinGroup, p: int, rank: int) -> list[FinGroup]:
    """All elementary abelian subgroups of order p^rank."""
    order_p = [x for x in g.elements if x != g.identity and g.element_order(x) == p]
    current = {frozenset([g.identity]): FinGroup.from_elements(g.kind, [])}
    for _ in range(rank):
        nxt: dict[frozenset, FinGroup] = {}
        for s in current.values():
            mul = g.kind.mul
            for x in order_p:
                if x in s.index:
                    continue
                if all(mul(x, y) == mul(y, x) for y in s.ensure_gens()):
                    cand = g.subgroup(s.ensure_gens() + [x])
                    if cand.order == s.order * p:
                        nxt.setdefault(frozenset(cand.elements), cand)
        current = nxt
        if not current:
            return []
    return list(current.values())


def index_p_subgroups(g: FinGroup, p: int) -> list[FinGroup]:
    """Subgroups of index p (kernels of epimorphisms onto C_p)."""
    der = g.derived_subgroup()
    pow_gens = [g.power(x, p) for x in g.ensure_gens()]
    kp = g.subgroup(der.ensure_gens() + pow_gens)
    if (g.order // kp.order) % p != 0:
        return []
    # Q = G/Kp is elementary abelian over F_p; enumerate its subgroups
    reps = g.left_transversal(kp)
    coset_of = g._coset_of
    rep_idx = {r: i for i, r in enumerate(reps)}
    qn = len(reps)

    def q_mul(i: int, j: int) -> int:
        return rep_idx[coset_of[g.mul(reps[i], reps[j])]]

    id_q = rep_idx[coset_of[g.identity]]
    all_subs = {frozenset([id_q])}
    frontier = [frozenset([id_q])]
    while frontier:
        base = frontier.pop()
        for x in range(qn):
            if x in base:
                continue
            new = set(base)
            stack = [x]
            while stack:
                y = stack.pop()
                if y in new:
                    continue
                new.add(y)
                for z in list(new):
                    stack.extend(w for w in (q_mul(y, z), q_mul(z, y)) if w not in new)
            fz = frozenset(new)
            if fz not in all_subs:
                all_subs.add(fz)
                frontier.append(fz)
    out, seen = [], set()
    for sub in all_subs:
        if len(sub) * p == qn:
            elems = [g.mul(reps[i], y) for i in sub for y in kp.elements]
            sg = FinGroup.from_elements(g.kind, elems)
            fs = frozenset(sg.elements)
            if fs not in seen:
                seen.add(fs)
                out.append(sg)
    return out


# ---------------------------------------------------------------------------
# Lemma "a subgroup of C x| D splits after C-conjugation"
# ---------------------------------------------------------------------------

def cdr_decomposition_check(cd: FinGroup, c_sub: FinGroup, d_sub: FinGroup,
                            x_sub: FinGroup) -> bool:
    """For |C| = r in {2,3} and abelian D: X <= CD is C-conjugate to a product
    C'D' provided the Sylow r-subgroup of X already has that form inside
    (CD)_r = C x D_r.  Raises ValueError("hypothesis not met") when the
    stated hypothesis on X_r fails, which is distinct from returning False.
    """
    r = c_sub.order
    if r not in (2, 3):
        raise ValueError("`C` must have order 2 or 3")
    if not d_sub.is_abelian():
        raise ValueError("`D` must be abelian")
    xr = x_sub.sylow_subgroup(r) if x_sub.order % r == 0 else FinGroup.from_elements(cd.kind, [])

    def splits(sub: FinGroup) -> bool:
        inter_c = [k for k in sub.elements if k in c_sub.index]
        inter_d = [k for k in sub.elements if k in d_sub.index]
        prods = set()
        for a in inter_c:
            for b in inter_d:
                prods.add(cd.mul(a, b))
        return len(prods) == sub.order and all(k in prods for k in sub.elements)

    hyp = False
    for c in c_sub.elements:
        conj = FinGroup.from_elements(cd.kind, [cd.conj(k, c) for k in xr.elements])
        if splits(conj):
            hyp = True
            break
    if not hyp:
        raise ValueError("hypothesis not met")
    for c in c_sub.elements:
        conj = FinGroup.from_elements(cd.kind, [cd.conj(k, c) for k in x_sub.elements])
        if splits(conj):
            return True
    return False

"""Small finite groups stored as full Cayley tables.

Elements are plain ``int`` indices into the table; ``0`` is always the
identity.  Groups are built only from structured constructors (cyclic,
dihedral, metacyclic, semidirect products with an abelian kernel, direct
products, permutation closure); there is no coset enumeration.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 2048


class GroupError(ValueError):
    """Inconsistent group data or an unparsable element word."""


@dataclass(eq=False)
class FiniteGroup:
    name: str
    table: np.ndarray
    generator_names: dict[str, int]
    element_words: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int32)
        self.table.setflags(write=False)
        n = self.table.shape[0]
        if self.table.shape != (n, n) or n == 0:
            raise GroupError("composition table must be square and non-empty")
        if not (np.array_equal(self.table[0], np.arange(n))
                and np.array_equal(self.table[:, 0], np.arange(n))):
            raise GroupError("element 0 must be the identity")
        inv = np.empty(n, dtype=np.int32)
        rows, cols = np.nonzero(self.table == 0)
        if len(rows) != n:
            raise GroupError("composition table is not a Latin square")
        inv[rows] = cols
        self._inv = inv
        if not self.element_words:
            self.element_words = _bfs_words(self)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        return 0

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def prod(self, elements: Iterable[int]) -> int:
        acc = 0
        t = self.table
        for e in elements:
            acc = t[acc, e]
        return int(acc)

    def inv(self, a: int) -> int:
        return int(self._inv[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        k %= self.element_order(a)
        return self.powers(a)[k]

    def conj(self, g: int, a: int) -> int:
        """g a g^-1."""
        return int(self.table[self.table[g, a], self._inv[g]])

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a b a^-1 b^-1."""
        t, i = self.table, self._inv
        return int(t[t[t[a, b], i[a]], i[b]])

    @cached_property
    def _orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        for a in range(n):
            k, x = 1, a
            while x != 0:
                x = self.table[x, a]
                k += 1
            orders[a] = k
        return orders

    def element_order(self, a: int) -> int:
        return int(self._orders[a])

    def powers(self, a: int) -> tuple[int, ...]:
        """(1, a, a^2, ..., a^(o(a)-1))."""
        return self._powers[a]

    @cached_property
    def _powers(self) -> list[tuple[int, ...]]:
        rows = self.table.tolist()
        out = []
        for a in range(self.order):
            pw = [0]
            x = a
            while x != 0:
                pw.append(x)
                x = rows[x][a]
            out.append(tuple(pw))
        return out

    def conjugacy_class(self, a: int) -> frozenset[int]:
        return self.conjugacy_classes()[self.class_index[a]]

    @cached_property
    def _classes(self) -> tuple[tuple[frozenset[int], ...], np.ndarray]:
        idx = np.full(self.order, -1, dtype=np.int64)
        classes = []
        for a in range(self.order):
            if idx[a] >= 0:
                continue
            cls = frozenset(self.conj(g, a) for g in range(self.order))
            for b in cls:
                idx[b] = len(classes)
            classes.append(cls)
        return tuple(classes), idx

    def conjugacy_classes(self) -> tuple[frozenset[int], ...]:
        """Classes ordered by their smallest element index (identity first)."""
        return self._classes[0]

    @property
    def class_index(self) -> np.ndarray:
        return self._classes[1]

    def centralizer(self, a: int) -> frozenset[int]:
        return frozenset(g for g in range(self.order) if self.table[g, a] == self.table[a, g])

    def subgroup_generated(self, gens: Iterable[int]) -> frozenset[int]:
        gens = [g for g in set(gens) if g != 0]
        seen = {0}
        frontier = [0]
        t = self.table
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(t[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def generates(self, gens: Iterable[int]) -> bool:
        return len(self.subgroup_generated(gens)) == self.order

    @cached_property
    def derived_subgroup(self) -> frozenset[int]:
        comms = {self.commutator(a, b) for a in range(self.order) for b in range(self.order)}
        return self.subgroup_generated(comms)

    def word(self, a: int) -> str:
        return self.element_words[a]

    def parse(self, text: str) -> int:
        """Evaluate a word such as ``x*y^2``, ``(y*z)^-1`` or ``1``."""
        return _WordParser(self, text).parse()

    def check_associative(self, samples: int | None = None, seed: int = 0) -> bool:
        n = self.order
        t = self.table
        if samples is None:
            left = t[t, :]            # left[a, b, c] = (ab)c
            right = t[:, t]           # right[a, b, c] = a(bc)
            return bool(np.array_equal(left, right))
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        return bool(np.array_equal(t[t[a, b], c], t[a, t[b, c]]))

    def is_latin_square(self) -> bool:
        want = np.arange(self.order)
        srt = np.sort(self.table, axis=1)
        srt_c = np.sort(self.table, axis=0)
        return bool((srt == want).all() and (srt_c == want[:, None]).all())


# -- word parsing -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[*^()]))")


class _WordParser:
    def __init__(self, group: FiniteGroup, text: str):
        self.group = group
        self.text = text
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise GroupError(f"cannot parse word {self.text!r} near {text[pos:]!r}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind)))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self) -> int:
        if not self.tokens:
            raise GroupError("empty word")
        val = self._expr()
        if self.i != len(self.tokens):
            raise GroupError(f"trailing input in word {self.text!r}")
        return val

    def _expr(self) -> int:
        val = self._factor()
        while self._peek() == ("op", "*"):
            self._take()
            val = self.group.mul(val, self._factor())
        return val

    def _factor(self) -> int:
        kind, tok = self._take()
        if kind == "op" and tok == "(":
            val = self._expr()
            if self._take() != ("op", ")"):
                raise GroupError(f"unbalanced parentheses in {self.text!r}")
        elif kind == "name":
            if tok in ("e", "id") and tok not in self.group.generator_names:
                val = 0
            elif tok not in self.group.generator_names:
                raise GroupError(f"unknown generator {tok!r} in {self.text!r}")
            else:
                val = self.group.generator_names[tok]
        elif kind == "int" and tok == "1":
            val = 0
        else:
            raise GroupError(f"unexpected token {tok!r} in {self.text!r}")
        if self._peek() == ("op", "^"):
            self._take()
            kind, tok = self._take()
            if kind != "int":
                raise GroupError(f"exponent must be an integer in {self.text!r}")
            val = self.group.power(val, int(tok))
        return val


def _bfs_words(group: FiniteGroup) -> list[str]:
    words: list[str | None] = [None] * group.order
    words[0] = "1"
    seqs: dict[int, list[str]] = {0: []}
    queue = deque([0])
    gens = sorted(group.generator_names.items(), key=lambda kv: kv[1])
    while queue:
        x = queue.popleft()
        for name, g in gens:
            y = group.mul(x, g)
            if y not in seqs:
                seqs[y] = seqs[x] + [name]
                queue.append(y)
    for x, seq in seqs.items():
        if seq:
            words[x] = _compress(seq)
    for x in range(group.order):
        if words[x] is None:
            words[x] = f"g{x}"
    return words  # type: ignore[return-value]


def _compress(names: Sequence[str]) -> str:
    parts = []
    for name, run in itertools.groupby(names):
        k = len(list(run))
        parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts)


def _monomial(names: Sequence[str], exps: Sequence[int]) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts) or "1"


# -- constructors -----------------------------------------------------------

def _from_elements(name: str, elements: Sequence[Hashable], identity: Hashable,
                   mul: Callable[[Hashable, Hashable], Hashable],
                   generators: dict[str, Hashable],
                   word: Callable[[Hashable], str] | None = None,
                   order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if len(elements) > order_cap:
        raise GroupError(f"group order {len(elements)} exceeds cap {order_cap}")
    elements = [identity] + [e for e in elements if e != identity]
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise GroupError("duplicate elements")
    n = len(elements)
    table = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(elements):
        table[i] = [index[mul(a, b)] for b in elements]
    words = [word(e) for e in elements] if word else []
    gens = {k: index[v] for k, v in generators.items()}
    return FiniteGroup(name, table, gens, words)


def cyclic(n: int, gen: str = "x", **kw) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic order must be positive")
    gens = {gen: 1 % n} if n > 1 else {}
    return _from_elements(f"Z{n}", list(range(n)), 0, lambda a, b: (a + b) % n, gens,
                          lambda a: _monomial([gen], [a]), **kw)


def semidirect(kernel_orders: Sequence[int], kernel_gens: Sequence[str],
               acting_order: int, action: Sequence[Sequence[int]],
               acting_gen: str = "x", name: str | None = None, **kw) -> FiniteGroup:
    """Z/a ⋉ (Z/k1 × ... × Z/kt) with x v x^-1 = action(v).

    ``action[i]`` is the exponent vector of the image of kernel generator i.
    Elements are written x^s * v.
    """
    ks = tuple(int(k) for k in kernel_orders)
    t = len(ks)
    if len(kernel_gens) != t or len(action) != t:
        raise GroupError("kernel orders, names and action rows must have equal length")
    M = [[int(c) % ks[j] for j, c in enumerate(row)] for row in action]
    if any(len(row) != t for row in M):
        raise GroupError("action rows must have one entry per kernel generator")
    for i in range(t):
        if any((ks[i] * M[i][j]) % ks[j] for j in range(t)):
            raise GroupError(f"image of {kernel_gens[i]} has order not dividing {ks[i]}")

    def apply(v):
        out = [0] * t
        for i, vi in enumerate(v):
            if vi:
                for j in range(t):
                    out[j] += vi * M[i][j]
        return tuple(o % k for o, k in zip(out, ks))

    kernel = list(itertools.product(*(range(k) for k in ks)))
    zero = tuple([0] * t)
    if len({apply(v) for v in kernel}) != len(kernel):
        raise GroupError("action is not an automorphism of the kernel")
    # phi^-s for s in 0..a-1, as lookup tables
    powers = [{v: v for v in kernel}]
    for _ in range(acting_order):
        prev = powers[-1]
        powers.append({v: apply(prev[v]) for v in kernel})
    if any(powers[acting_order][v] != v for v in kernel):
        raise GroupError(f"action does not have order dividing {acting_order}")
    inv_pow = [powers[(-s) % acting_order] for s in range(acting_order)]

    def mul(p, q):
        s1, v1 = p
        s2, v2 = q
        w = inv_pow[s2][v1]
        return ((s1 + s2) % acting_order, tuple((a + b) % k for a, b, k in zip(w, v2, ks)))

    elements = [(s, v) for s in range(acting_order) for v in kernel]
    gens = {acting_gen: (1 % acting_order, zero)}
    for i, g in enumerate(kernel_gens):
        gens[g] = (0, tuple(1 % ks[j] if j == i else 0 for j in range(t)))
    names = [acting_gen, *kernel_gens]
    return _from_elements(name or f"semidirect({acting_order},{ks})", elements, (0, zero), mul,
                          gens, lambda e: _monomial(names, (e[0], *e[1])), **kw)


def metacyclic(a: int, b: int, c: int, gens: Sequence[str] = ("x", "y"),
               name: str | None = None, **kw) -> FiniteGroup:
    """<x, y | x^a = y^b = 1, x y x^-1 = y^c>, order a*b."""
    if gcd(c, b) != 1 or pow(c, a, b) != 1 % b:
        raise GroupError(f"metacyclic({a},{b},{c}): need gcd(c,b)=1 and c^a = 1 mod b")
    return semidirect([b], [gens[1]], a, [[c]], acting_gen=gens[0],
                      name=name or f"metacyclic({a},{b},{c})", **kw)


def dihedral(order: int, gens: Sequence[str] = ("x", "y"), **kw) -> FiniteGroup:
    """Dihedral group of the given order: x^2 = y^n = 1, x y x^-1 = y^-1."""
    if order < 2 or order % 2:
        raise GroupError("dihedral order must be even and at least 2")
    n = order // 2
    return metacyclic(2, n, n - 1 if n > 1 else 0, gens, name=f"D{order}", **kw)


def direct_product(*factors: FiniteGroup, name: str | None = None, **kw) -> FiniteGroup:
    gens: dict[str, tuple[int, ...]] = {}
    for i, f in enumerate(factors):
        for g, idx in f.generator_names.items():
            if g in gens:
                raise GroupError(f"generator name {g!r} appears in two factors")
            gens[g] = tuple(idx if j == i else 0 for j in range(len(factors)))
    elements = list(itertools.product(*(range(f.order) for f in factors)))

    def mul(p, q):
        return tuple(f.mul(a, b) for f, a, b in zip(factors, p, q))

    def word(e):
        ws = [f.word(a) for f, a in zip(factors, e) if a != 0]
        return "*".join(ws) or "1"

    return _from_elements(name or "x".join(f.name for f in factors), elements,
                          tuple([0] * len(factors)), mul, gens, word, **kw)


def permutation_group(generators: dict[str, Sequence[int]], name: str = "perm",
                      order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Closure of the given permutations (image lists on 0..N-1)."""
    perms = {k: tuple(int(i) for i in p) for k, p in generators.items()}
    degrees = {len(p) for p in perms.values()}
    if len(degrees) > 1:
        raise GroupError("generator permutations act on different numbers of letters")
    deg = degrees.pop() if degrees else 0
    for k, p in perms.items():
        if sorted(p) != list(range(deg)):
            raise GroupError(f"generator {k!r} is not a permutation of 0..{deg - 1}")
    ident = tuple(range(deg))

    def mul(p, q):  # apply q first, then p: (pq)(i) = p(q(i))
        return tuple(p[i] for i in q)

    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in perms.values():
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > order_cap:
                        raise GroupError(f"permutation closure exceeds order cap {order_cap}")
        frontier = nxt
    return _from_elements(name, sorted(seen), ident, mul, perms, None, order_cap=order_cap)


def build_group(spec: dict, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from a config mapping with a ``type`` key."""
    spec = dict(spec)
    kind = spec.pop("type", None)
    cap = int(spec.pop("order_cap", order_cap))
    name = spec.pop("name", None)
    try:
        if kind == "cyclic":
            g = cyclic(int(spec["n"]), spec.get("gen", "x"), order_cap=cap)
        elif kind == "dihedral":
            g = dihedral(int(spec["order"]), tuple(spec.get("gens", ("x", "y"))), order_cap=cap)
        elif kind == "metacyclic":
            g = metacyclic(int(spec["a"]), int(spec["b"]), int(spec["c"]),
                           tuple(spec.get("gens", ("x", "y"))), order_cap=cap)
        elif kind == "semidirect":
            g = semidirect(spec["kernel_orders"], spec["kernel_gens"], int(spec["acting_order"]),
                           spec["action"], spec.get("acting_gen", "x"), order_cap=cap)
        elif kind == "direct_product":
            g = direct_product(*(build_group(f, cap) for f in spec["factors"]), order_cap=cap)
        elif kind == "permutation":
            g = permutation_group(spec["generators"], order_cap=cap)
        else:
            raise GroupError(f"unknown group type {kind!r}")
    except KeyError as exc:
        raise GroupError(f"group spec of type {kind!r} is missing key {exc}") from None
    if name:
        g.name = name
    for rel in spec.get("relations", ()):
        lhs, _, rhs = rel.partition("=")
        if g.parse(lhs) != g.parse(rhs or "1"):
            raise GroupError(f"relation {rel!r} fails in {g.name}")
    return g

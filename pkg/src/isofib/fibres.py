"""Singular fibres of the two isotrivial fibrations of X and their blow-downs.

The fibre of X -> C_k/G over a branch point with local period m is

    F = m Y + sum_j c_j Z_j

where Y is the strict transform of (fibre curve)/<local monodromy> and the
Z_j run over the Hirzebruch-Jung strings of the singular points on it.  For a
point of type 1/n(1,q), with the fibre direction normalized to weight 1, Y
meets the first curve of the expansion of n/q.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import covers, hj
from .invariants import SurfaceRecord
from .singular import BasketEntry, SingularityType


class FibreError(RuntimeError):
    pass


@dataclass
class Component:
    name: str
    mult: int
    self_int: int
    k_deg: int
    string_index: int | None = None     # None for the central component
    position: int = 0                    # 1-based along the string, counted from Y

    @property
    def arithmetic_genus(self) -> int:
        return 1 + (self.k_deg + self.self_int) // 2

    @property
    def is_minus_one_curve(self) -> bool:
        return self.k_deg == -1 and self.self_int == -1

    @property
    def is_minus_two_curve(self) -> bool:
        return self.k_deg == 0 and self.self_int == -2


@dataclass
class FibreModel:
    base_choice: int
    branch_index: int | None
    fibre_genus: int
    components: list[Component]
    meets: dict[frozenset, int] = field(default_factory=dict)
    points: list[BasketEntry] = field(default_factory=list)
    central_genus_rh: int | None = None

    def copy(self) -> "FibreModel":
        return replace(self, components=[replace(c) for c in self.components],
                       meets=dict(self.meets), points=list(self.points))

    def component(self, name: str) -> Component:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(name)

    def dot(self, a: Component, b: Component) -> int:
        if a.name == b.name:
            return a.self_int
        return self.meets.get(frozenset((a.name, b.name)), 0)

    def f_dot(self, z: Component) -> int:
        return sum(c.mult * self.dot(c, z) for c in self.components)

    def f_squared(self) -> int:
        return sum(c.mult * self.f_dot(c) for c in self.components)

    def k_dot_f(self) -> int:
        return sum(c.mult * c.k_deg for c in self.components)

    def check(self):
        bad = [c.name for c in self.components if self.f_dot(c) != 0]
        if bad:
            raise FibreError(f"F.Z != 0 for components {bad}")
        if self.f_squared() != 0:
            raise FibreError("F^2 != 0")
        if self.k_dot_f() != 2 * self.fibre_genus - 2:
            raise FibreError(f"K.F = {self.k_dot_f()} != 2g - 2 = {2 * self.fibre_genus - 2}")

    @property
    def central(self) -> Component | None:
        return next((c for c in self.components if c.string_index is None), None)

    def expression(self) -> str:
        """``2Y + Z1 + Z2`` style linear combination."""
        return " + ".join(f"{c.mult if c.mult != 1 else ''}{c.name}" for c in self.components)

    def strings(self) -> dict[int, list[Component]]:
        out: dict[int, list[Component]] = {}
        for c in self.components:
            if c.string_index is not None:
                out.setdefault(c.string_index, []).append(c)
        return out


@dataclass
class BlowdownTrace:
    contracted: list[str]
    final: FibreModel

    @property
    def beta(self) -> int:
        return len(self.contracted)


def _string_letter(s: int) -> str:
    letters = [ch for ch in string.ascii_uppercase if ch != "Y"]
    return letters[s] if s < len(letters) else f"S{s}_"


def oriented_type(entry: BasketEntry, base_choice: int) -> SingularityType:
    """Type with the fibre direction normalized to weight 1."""
    return entry.type if base_choice == 2 else entry.type.swapped()


def string_multiplicities(b: tuple[int, ...], m: int) -> list[Fraction]:
    """Solve F.Z_j = 0 along a string whose first curve meets Y (multiplicity m)."""
    rhs = [-m] + [0] * (len(b) - 1)
    return hj.solve_tridiagonal([-x for x in b], [1] * (len(b) - 1), rhs)


def build_fibre(rec: SurfaceRecord, base_choice: int, branch_index: int | None) -> FibreModel:
    if base_choice not in (1, 2):
        raise ValueError("base_choice must be 1 (fibres ~ C2) or 2 (fibres ~ C1)")
    # fibres of X -> C2/G are copies of C1 and vice versa
    fibre_vec, base_vec = (rec.v1, rec.v2) if base_choice == 2 else (rec.v2, rec.v1)
    g_f = rec.g1 if base_choice == 2 else rec.g2
    if branch_index is None:
        model = FibreModel(base_choice, None, g_f, [Component("Y", 1, 0, 2 * g_f - 2)],
                           central_genus_rh=g_f)
        model.check()
        return model
    if not 0 <= branch_index < len(base_vec.branch):
        raise ValueError(f"no branch point {branch_index} on C{3 - base_choice}/G")
    G = rec.group
    monodromy = base_vec.branch[branch_index]
    m = G.element_order(monodromy)
    entries = rec.basket.on_fibre(base_choice, branch_index)

    comps = [Component("Y", m, 0, 0)]
    meets: dict[frozenset, int] = {}
    first_mults = 0
    k_strings = 0
    for s, entry in enumerate(entries):
        t = oriented_type(entry, base_choice)
        b = hj.expand(t.n, t.q).b
        c = string_multiplicities(b, m)
        if any(x.denominator != 1 or x <= 0 for x in c):
            alt = string_multiplicities(b[::-1], m)
            raise FibreError(f"string {b} of {t} has no positive integer multiplicities "
                             f"(got {c}; other end {alt})")
        if c[0] * t.n != m * t.q:
            raise FibreError(f"string of {t}: first multiplicity {c[0]} incompatible with orientation")
        letter = _string_letter(s)
        prev = "Y"
        for pos, (bi, ci) in enumerate(zip(b, c), start=1):
            name = letter if len(b) == 1 else f"{letter}{pos}"
            comps.append(Component(name, int(ci), -bi, bi - 2, s, pos))
            meets[frozenset((prev, name))] = 1
            prev = name
            k_strings += int(ci) * (bi - 2)
        first_mults += int(c[0])

    y2 = Fraction(-first_mults, m)
    ky = Fraction(2 * g_f - 2 - k_strings, m)
    if y2.denominator != 1 or ky.denominator != 1:
        raise FibreError(f"non-integral Y^2 = {y2} or K.Y = {ky}")
    comps[0].self_int = int(y2)
    comps[0].k_deg = int(ky)

    # Riemann-Hurwitz for (fibre curve) -> (fibre curve)/<monodromy>
    ram = sum(covers.fix_count(fibre_vec, h) for h in G.powers(monodromy)[1:])
    rh = Fraction(2 * g_f - 2 - ram, m)
    if rh.denominator != 1 or int(rh) % 2:
        raise FibreError(f"Riemann-Hurwitz for the central component gives 2g-2 = {rh}")
    g_rh = int(rh) // 2 + 1
    model = FibreModel(base_choice, branch_index, g_f, comps, meets, list(entries), g_rh)
    if comps[0].arithmetic_genus != g_rh:
        raise FibreError(f"central genus: adjunction {comps[0].arithmetic_genus} != "
                         f"Riemann-Hurwitz {g_rh}")
    model.check()
    return model


def fibres(rec: SurfaceRecord, base_choice: int) -> list[FibreModel]:
    """Fibres over every branch point of the chosen base."""
    base_vec = rec.v2 if base_choice == 2 else rec.v1
    return [build_fibre(rec, base_choice, j) for j in range(len(base_vec.branch))]


def contract(f: FibreModel, e: Component) -> None:
    """Blow down the (-1)-curve ``e`` in place."""
    if not e.is_minus_one_curve:
        raise FibreError(f"{e.name} is not a (-1)-curve")
    others = [c for c in f.components if c.name != e.name]
    de = {c.name: f.dot(c, e) for c in others}
    new_meets = {}
    for i, a in enumerate(others):
        for b in others[i + 1:]:
            val = f.dot(a, b) + de[a.name] * de[b.name]
            if val:
                new_meets[frozenset((a.name, b.name))] = val
    for c in others:
        c.self_int += de[c.name] ** 2
        c.k_deg -= de[c.name]
    f.components = others
    f.meets = new_meets


def contract_to_relative_minimal(f: FibreModel) -> tuple[FibreModel, BlowdownTrace]:
    g = f.copy()
    contracted = []
    while True:
        e = next((c for c in g.components if c.is_minus_one_curve), None)
        if e is None:
            break
        contract(g, e)
        contracted.append(e.name)
        g.check()
    return g, BlowdownTrace(contracted, g)


def delta(f: FibreModel, trace: BlowdownTrace) -> Fraction:
    total = Fraction(0)
    for entry in f.points:
        t = oriented_type(entry, f.base_choice)
        total += hj.corrections(hj.expand(t.n, t.q)).B
    return total - trace.beta


@dataclass(frozen=True)
class AmplenessVerdict:
    minimal: bool | None
    K_ample: bool | None
    canonical_model_is_T: bool | None
    reason: str = ""


def ampleness_verdict(rec: SurfaceRecord, contracted: list[FibreModel], traces: list[BlowdownTrace],
                      base_choice: int) -> AmplenessVerdict:
    """Minimality of X and ampleness of K on its minimal model.

    Every rational curve lies in a fibre of the chosen fibration when its base
    has positive genus, so the fibres decide.  Otherwise nothing is claimed.
    """
    base_genus = rec.base_genus2 if base_choice == 2 else rec.base_genus1
    if base_genus < 1:
        return AmplenessVerdict(None, None, None, "chosen base is rational")
    if min(rec.g1, rec.g2) < 2:
        return AmplenessVerdict(None, None, None, "a fibre curve has genus < 2 (ruled or elliptic)")
    minimal = all(t.beta == 0 for t in traces)
    k_ample = not any(c.k_deg <= 0 for f in contracted for c in f.components)
    all_rdp = all(hj.is_rdp(hj.expand(e.type.n, e.type.q)) for e in rec.basket.entries)
    return AmplenessVerdict(minimal, k_ample, minimal and all_rdp)


def diagram(f: FibreModel) -> str:
    """Text rendering: central component, then each string hanging off it."""
    lines = [f"F = {f.expression()}"]
    central = f.central
    strings = f.strings()
    if central is not None:
        lines.append(f"  {central.name}: mult {central.mult}, {central.name}^2 = {central.self_int}, "
                     f"K.{central.name} = {central.k_deg}, genus {central.arithmetic_genus}")
    for s, chain in sorted(strings.items()):
        pt = f.points[s].type if s < len(f.points) else None
        label = f"  {'└' if s == max(strings) else '├'}─ "
        body = " ─ ".join(f"{c.name}({c.mult}; {c.self_int}, K {c.k_deg})" for c in chain)
        lines.append(label + body + (f"   [{oriented_type(f.points[s], f.base_choice)}]" if pt else ""))
    extra = [(sorted(k), v) for k, v in f.meets.items()
             if not _is_chain_edge(f, *sorted(k))]
    for (a, b), v in sorted(extra):
        lines.append(f"  {a} · {b} = {v}")
    return "\n".join(lines)


def _is_chain_edge(f: FibreModel, a: str, b: str) -> bool:
    ca, cb = f.component(a), f.component(b)
    if ca.string_index is None or cb.string_index is None:
        other = cb if ca.string_index is None else ca
        if ca.string_index is None and cb.string_index is None:
            return False
        return other.position == 1 and f.central is not None
    return ca.string_index == cb.string_index and abs(ca.position - cb.position) == 1

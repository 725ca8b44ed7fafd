"""The finite extension of W by its elementary abelian 2-torus.

Inside the universal group, the subgroup generated by the elements
``m_alpha(1)`` is an extension of the Weyl group by the 2-group generated by
the ``h_alpha(-1)``.  We model it by canonical forms ``(w, t)``: the lift of
``w`` through any reduced word, times the torus element with GF(2) coroot
coordinates ``t``.  The group law folds a reduced word of the right factor
through the left one, using only three facts:

* lifts along reduced words are well defined (the simple lifts satisfy the
  braid relations exactly),
* the square of a simple lift is the corresponding torus generator,
* conjugation permutes torus generators through the reflection action on
  coroots.

None of this needs a structure constant sign; faithfulness of the model is
cross-checked against the matrix oracles in :mod:`weylspin.oracles`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .rootsystem import CocharacterLattice, RootSystem
from . import weyl
from .weyl import WeylElement

Bits = tuple[int, ...]


def _zero(n: int) -> Bits:
    return (0,) * n


def _bits(values) -> Bits:
    return tuple(int(v) % 2 for v in values)


def torus_str(bits: Bits) -> str:
    """Render a torus element as a word in the generators, e.g. ``h1h3h5``."""
    word = "".join(f"h{i+1}" for i, b in enumerate(bits) if b)
    return word or "1"


@dataclass(frozen=True)
class TitsElement:
    """Canonical form (w, t), meaning lift-of-w times torus-part t."""

    w: WeylElement
    t: Bits

    def is_identity(self) -> bool:
        return self.w.is_identity() and not any(self.t)

    def __str__(self) -> str:
        return f"(word {self.w.reduced_word()}, {torus_str(self.t)})"


def identity(rs: RootSystem) -> TitsElement:
    return TitsElement(weyl.identity(rs), _zero(rs.rank))


def torus(rs: RootSystem, bits) -> TitsElement:
    return TitsElement(weyl.identity(rs), _bits(bits))


def lift(w: WeylElement) -> TitsElement:
    """The canonical lift of w: torus part zero."""
    return TitsElement(w, _zero(w.rs.rank))


def _reflect_torus(rs: RootSystem, t: list[int], i: int) -> None:
    """In place: apply the simple reflection to GF(2) coroot coordinates.

    Only coordinate i changes: t_i += sum_j <alpha_i, alpha_j coroot> t_j.
    """
    acc = 0
    row = rs.cartan[i]
    for j, tj in enumerate(t):
        if tj and (row[j] & 1):
            acc ^= 1
    t[i] ^= acc


def multiply(g1: TitsElement, g2: TitsElement) -> TitsElement:
    """Product in canonical form.

    Folds a reduced word of ``g2.w`` into ``g1`` letter by letter.  Moving the
    accumulated torus part past a letter applies the reflection to it; when
    the letter shortens the Weyl part, the squared generator contributes the
    extra torus generator for that node.
    """
    rs = g1.w.rs
    if rs is not g2.w.rs:
        raise DomainError("cannot multiply elements over different root systems")
    w = g1.w
    t = list(g1.t)
    for i in g2.w.reduced_word():
        _reflect_torus(rs, t, i)
        if w.right_descent(i):
            t[i] ^= 1
        w = w.times_simple(i)
    t2 = g2.t
    return TitsElement(w, tuple(a ^ b for a, b in zip(t, t2)))


def inverse(g: TitsElement) -> TitsElement:
    """g^{-1}, found from the lift of the inverse Weyl part.

    The product lift(w^{-1}) * g is a pure torus element s, so
    g^{-1} = s * lift(w^{-1}) (torus elements are involutions).
    """
    rs = g.w.rs
    cand = lift(g.w.inverse())
    prod = multiply(cand, g)
    assert prod.w.is_identity()
    result = multiply(torus(rs, prod.t), cand)
    return result


def power(g: TitsElement, k: int) -> TitsElement:
    if k < 0:
        raise DomainError("negative powers not needed; invert first")
    rs = g.w.rs
    acc = identity(rs)
    base = g
    while k:
        if k & 1:
            acc = multiply(acc, base)
        base = multiply(base, base)
        k >>= 1
    return acc


def order_of(g: TitsElement) -> int:
    d = g.w.order()
    p = power(g, d)
    if not p.w.is_identity():
        raise DomainError("order of the Weyl part is wrong")
    return d if not any(p.t) else 2 * d


@dataclass(frozen=True)
class SpinSignature:
    bits: Bits

    def is_trivial(self) -> bool:
        return not any(self.bits)

    def __str__(self) -> str:
        return torus_str(self.bits)


def spin_signature(w: WeylElement) -> SpinSignature:
    """The d-th power of any lift of an elliptic w, as a torus element.

    Rejects non-elliptic input: there the answer depends on the chosen
    representative (over most fields a non-elliptic element even has
    representatives of infinite order), so no signature is defined.
    """
    if not w.is_elliptic():
        raise DomainError(
            "spin signature is only defined for elliptic elements; "
            "representatives of non-elliptic elements need not share an order"
        )
    d = w.order()
    p = power(lift(w), d)
    assert p.w.is_identity()
    return SpinSignature(p.t)


def spin(w: WeylElement, lattice: CocharacterLattice) -> int:
    """+1 when every representative in the group of this lattice has order d."""
    sig = spin_signature(w)
    return 1 if w.rs.reduces_trivially(sig.bits, lattice) else -1


@dataclass(frozen=True)
class SpinResult:
    """Order, signature, and spin per isogeny type for one elliptic element."""

    family: str
    rank: int
    order: int
    signature: SpinSignature
    spins: tuple[tuple[str, int], ...]

    def to_dict(self) -> dict:
        return {
            "type": f"{self.family}{self.rank}",
            "order": self.order,
            "signatureBits": list(self.signature.bits),
            "signature": str(self.signature),
            "spins": {name: s for name, s in self.spins},
        }


def spin_result(w: WeylElement) -> SpinResult:
    rs = w.rs
    sig = spin_signature(w)
    spins = []
    inter = 0
    for lat in rs.cocharacter_lattices():
        if lat.kind == "intermediate":
            # D_{2l} has three distinct lattices of the same index, so the
            # names must carry a position, not just the index
            name = f"intermediate{inter}(index {lat.index_over_coroots()})"
            inter += 1
        else:
            name = lat.kind
        spins.append((name, 1 if rs.reduces_trivially(sig.bits, lat) else -1))
    if all(name != "adjoint" for name, _ in spins):
        # trivial fundamental group: adjoint and universal coincide
        spins.append(("adjoint", spins[0][1]))
    return SpinResult(rs.family, rs.rank, w.order(), sig, tuple(spins))


def conjugate_torus(u: WeylElement, bits: Bits) -> Bits:
    """The conjugation action of a Weyl element on torus coordinates."""
    m = u.coroot_matrix()
    n = u.rs.rank
    return tuple(sum(m[i][j] * bits[j] for j in range(n)) % 2 for i in range(n))

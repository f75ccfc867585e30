"""Integer symplectic matrices: rotation actions on homology, Dehn-twist
transvections, Humphries classes, and mod-p generation checks.

Basis convention: interleaved symplectic pairs (a1, b1, a2, b2, ...), so the
standard form J is block-diagonal with 2x2 blocks [[0, 1], [-1, 0]].  All
arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDecomposition, RangeError, TooLarge, ZeroVector
from .genus import GenusDecomposition

Array = np.ndarray


def _form(g: int) -> Array:
    j = np.zeros((2 * g, 2 * g), dtype=np.int64)
    for i in range(g):
        j[2 * i, 2 * i + 1] = 1
        j[2 * i + 1, 2 * i] = -1
    return j


@dataclass(frozen=True)
class SymplecticMatrix:
    """2g x 2g integer matrix with M^T J M = J (checked on construction)."""

    g: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = self.np
        if m.shape != (2 * self.g, 2 * self.g):
            raise InvalidDecomposition(
                f"expected shape {(2 * self.g,) * 2}, got {m.shape}"
            )
        j = _form(self.g)
        if not np.array_equal(m.T @ j @ m, j):
            raise InvalidDecomposition("matrix does not preserve the form")

    @classmethod
    def from_array(cls, m) -> "SymplecticMatrix":
        m = np.asarray(m, dtype=np.int64)
        return cls(m.shape[0] // 2, tuple(tuple(int(x) for x in row) for row in m))

    @property
    def np(self) -> Array:
        return np.array(self.entries, dtype=np.int64)

    @classmethod
    def identity(cls, g: int) -> "SymplecticMatrix":
        return cls.from_array(np.eye(2 * g, dtype=np.int64))

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return SymplecticMatrix.from_array(self.np @ other.np)

    def inverse(self) -> "SymplecticMatrix":
        # J^-1 M^T J is the symplectic inverse, exactly over the integers
        j = _form(self.g)
        return SymplecticMatrix.from_array(-j @ self.np.T @ j)

    def order(self, cap: int = 10_000) -> int | None:
        """Multiplicative order, or None if it exceeds cap."""
        ident = np.eye(2 * self.g, dtype=np.int64)
        acc = self.np
        for m in range(1, cap + 1):
            if np.array_equal(acc, ident):
                return m
            acc = acc @ self.np
        return None

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)

    @classmethod
    def from_text(cls, text: str) -> "SymplecticMatrix":
        rows = [
            [int(tok) for tok in line.split()]
            for line in text.strip().splitlines()
            if line.strip()
        ]
        return cls.from_array(np.array(rows, dtype=np.int64))

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    @classmethod
    def from_json(cls, data) -> "SymplecticMatrix":
        return cls.from_array(np.array(data, dtype=np.int64))


@dataclass(frozen=True)
class HomologyBasis:
    """Ordered class labels for the 2g basis vectors, grouped by piece."""

    g: int
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) != 2 * self.g:
            raise InvalidDecomposition(
                f"expected {2 * self.g} labels, got {len(self.labels)}"
            )

    def vector(self, label: str) -> Array:
        v = np.zeros(2 * self.g, dtype=np.int64)
        v[self.labels.index(label)] = 1
        return v


def standard_form(g: int) -> Array:
    """The symplectic form J on the interleaved basis; J^2 = -Identity."""
    if g < 1:
        raise RangeError(f"need g >= 1, got {g}")
    return _form(g)


def standard_basis(g: int) -> HomologyBasis:
    labels = []
    for i in range(1, g + 1):
        labels += [f"a{i}", f"b{i}"]
    return HomologyBasis(g, tuple(labels))


def basis_for(dec: GenusDecomposition) -> HomologyBasis:
    """Piece-grouped labels: handle pairs (a, b) on genus-k pieces, tube
    pairs (c, d) on genus-(k-1) pieces, one extra pair for plus_one."""
    labels = []
    for p in range(dec.a):
        for i in range(1, dec.k + 1):
            labels += [f"p{p}:a{i}", f"p{p}:b{i}"]
    for p in range(dec.a, dec.a + dec.b):
        for i in range(1, dec.k):
            labels += [f"p{p}:c{i}", f"p{p}:d{i}"]
    if dec.plus_one:
        labels += ["axis:a", "axis:b"]
    return HomologyBasis(dec.genus(), tuple(labels))


def _interleave(c_block: Array, d_block: Array) -> Array:
    """Combine actions on the a-type and b-type halves of interleaved pairs."""
    m = c_block.shape[0]
    out = np.zeros((2 * m, 2 * m), dtype=np.int64)
    out[0::2, 0::2] = c_block
    out[1::2, 1::2] = d_block
    return out


def _genus_k_block(k: int) -> Array:
    """Cyclic shift of k handle pairs: a_i -> a_{i+1}, b_i -> b_{i+1}."""
    perm = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        perm[(i + 1) % k, i] = 1
    return _interleave(perm, perm)


def _genus_k_minus_1_block(k: int) -> Array:
    """Rotation of a genus-(k-1) piece (two spheres joined by k tubes).

    Tube meridians c_1..c_{k-1} rotate c_i -> c_{i+1} with the wrap
    c_{k-1} -> c_k = -(c_1 + ... + c_{k-1}); this is the companion matrix C
    of x^{k-1} + ... + x + 1, which has order exactly k.  The dual tube-path
    classes transform by C^-T, the unique integer choice that preserves the
    standard pairing <c_i, d_j> = delta_ij.
    """
    m = k - 1
    c = np.zeros((m, m), dtype=np.int64)
    for i in range(m - 1):
        c[i + 1, i] = 1
    c[:, m - 1] = -1
    c_inv = np.round(np.linalg.inv(c)).astype(np.int64)
    assert np.array_equal(c @ c_inv, np.eye(m, dtype=np.int64))
    return _interleave(c, c_inv.T)


def rotation_matrix(dec: GenusDecomposition) -> SymplecticMatrix:
    """Homology action of the order-k rotation of the decomposed surface:
    block-diagonal over pieces, identity on the plus_one axis handle."""
    if dec.k < 2:
        raise InvalidDecomposition(f"need k >= 2, got {dec.k}")
    blocks = [_genus_k_block(dec.k)] * dec.a + [
        _genus_k_minus_1_block(dec.k)
    ] * dec.b
    if dec.plus_one:
        blocks.append(np.eye(2, dtype=np.int64))
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    pos = 0
    for b in blocks:
        s = b.shape[0]
        out[pos : pos + s, pos : pos + s] = b
        pos += s
    return SymplecticMatrix.from_array(out)


def twist_transvection(basis: HomologyBasis | int, v) -> SymplecticMatrix:
    """x -> x + <x, v> v, the homology image of the Dehn twist along v."""
    g = basis if isinstance(basis, int) else basis.g
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (2 * g,):
        raise InvalidDecomposition(f"expected vector of length {2 * g}")
    if not v.any():
        raise ZeroVector("cannot twist along the zero class")
    # <x, v> v = v (v^T J^T x) = (v (J v)^T) x, so M = I + outer(v, J v)
    j = _form(g)
    m = np.eye(2 * g, dtype=np.int64) + np.outer(v, j @ v)
    return SymplecticMatrix.from_array(m)


def humphries_classes(g: int) -> list[Array]:
    """Homology classes of the 2g+1 Humphries curves, in chain order
    beta_1, gamma_1, beta_2, gamma_2, ..., beta_g, then alpha_1, alpha_2.

    beta_i -> a_i, gamma_i -> b_i - b_{i+1}, alpha_1 -> b_1, alpha_2 -> b_2.
    """
    if g < 2:
        raise RangeError(f"need g >= 2, got {g}")
    basis = standard_basis(g)
    out = []
    for i in range(1, g + 1):
        out.append(basis.vector(f"a{i}"))
        if i < g:
            out.append(basis.vector(f"b{i}") - basis.vector(f"b{i + 1}"))
    out.append(basis.vector("b1"))
    out.append(basis.vector("b2"))
    return out


def humphries_labels(g: int) -> list[str]:
    """Labels aligned with humphries_classes order."""
    out = []
    for i in range(1, g + 1):
        out.append(f"beta{i}")
        if i < g:
            out.append(f"gamma{i}")
    out += ["alpha1", "alpha2"]
    return out


def sp_order(g: int, p: int) -> int:
    """|Sp(2g, p)| = p^(g^2) * prod_{i=1..g} (p^(2i) - 1)."""
    order = p ** (g * g)
    for i in range(1, g + 1):
        order *= p ** (2 * i) - 1
    return order


def generates_mod_p(
    mats: list[SymplecticMatrix], p: int, budget: int = 2_000_000
) -> tuple[bool, int]:
    """Reduce mod p and enumerate the generated matrix group by BFS.

    Returns (order equals |Sp(2g, p)|, enumerated order).  Raises TooLarge
    when parameters put |Sp(2g, p)| or the closure beyond the enumeration
    budget.
    """
    if not mats:
        raise ZeroVector("need at least one matrix")
    g = mats[0].g
    if g > 3 or p not in (2, 3):
        raise TooLarge(f"enumeration limited to g <= 3, p in {{2, 3}}; got g={g}, p={p}")
    target = sp_order(g, p)
    if target > budget:
        raise TooLarge(
            f"|Sp({2 * g},{p})| = {target} exceeds enumeration budget {budget}"
        )
    gens = [np.mod(m.np, p).astype(np.int8) for m in mats]
    ident = np.mod(np.eye(2 * g, dtype=np.int64), p).astype(np.int8)
    seen = {ident.tobytes()}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for q in gens:
                r = np.mod(m @ q.astype(np.int64), p).astype(np.int8)
                key = r.tobytes()
                if key not in seen:
                    if len(seen) >= budget:
                        raise TooLarge("closure exceeded enumeration budget")
                    seen.add(key)
                    nxt.append(r)
        frontier = nxt
    return len(seen) == target, len(seen)

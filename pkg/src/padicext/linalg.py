"""Exact linear algebra over F_p on small vector spaces.

Two codecs share one interface: characteristic 2 packs a vector into the
bits of a Python int (coordinate i = bit i), odd characteristic uses
coordinate tuples.  Subspaces are kept as reduced row echelon bases with
pivots descending, which gives every subspace a unique hashable key.
Dimensions stay below ~100, so O(n^2) row operations are fine; the only
hot path is applying a fixed linear map during spinning, which gets
byte-chunked XOR tables in characteristic 2.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator

from .errors import DomainError


class VecSpace:
    """Coordinate space F_p^n with codec-aware helpers."""

    def __init__(self, p: int, n: int) -> None:
        self.p = p
        self.n = n
        self.packed = p == 2

    # -- vector basics ------------------------------------------------------

    def zero(self):
        return 0 if self.packed else (0,) * self.n

    def unit(self, i: int):
        if self.packed:
            return 1 << i
        return tuple(1 if j == i else 0 for j in range(self.n))

    def add(self, u, v):
        if self.packed:
            return u ^ v
        p = self.p
        return tuple((a + b) % p for a, b in zip(u, v))

    def smul(self, c: int, v):
        if self.packed:
            return v if c & 1 else 0
        p = self.p
        c %= p
        return tuple(c * a % p for a in v)

    def neg(self, v):
        if self.packed:
            return v
        p = self.p
        return tuple(-a % p for a in v)

    def encode(self, v) -> int:
        """Injective integer key (base-p digits); orders vectors canonically."""
        if self.packed:
            return v
        k = 0
        for a in reversed(v):
            k = k * self.p + a
        return k

    def decode(self, k: int):
        if self.packed:
            return k
        out = []
        for _ in range(self.n):
            k, r = divmod(k, self.p)
            out.append(r)
        return tuple(out)

    def vectors(self) -> Iterator:
        """All vectors in canonical ascending key order (includes zero)."""
        if self.packed:
            yield from range(1 << self.n)
        else:
            for k in range(self.p ** self.n):
                yield self.decode(k)

    # -- echelon bases --------------------------------------------------------

    def pivot(self, v) -> int:
        """Index of the highest nonzero coordinate, -1 for zero."""
        if self.packed:
            return v.bit_length() - 1
        for i in range(self.n - 1, -1, -1):
            if v[i]:
                return i
        return -1

    def reduce(self, v, rows: list) -> object:
        """Reduce v against rows (each with distinct pivots, descending)."""
        if self.packed:
            for r in rows:
                h = r.bit_length() - 1
                if (v >> h) & 1:
                    v ^= r
            return v
        p = self.p
        v = list(v)
        for r in rows:
            h = self.pivot(r)
            c = v[h]
            if c:
                rh = r[h]
                factor = c * pow(rh, -1, p) % p
                for i in range(h + 1):
                    v[i] = (v[i] - factor * r[i]) % p
        return tuple(v)

    def insert(self, rows: list, v) -> bool:
        """Reduce v and insert into the descending-pivot basis; report growth."""
        v = self.reduce(v, rows)
        h = self.pivot(v)
        if h < 0:
            return False
        if not self.packed:
            inv = pow(v[h], -1, self.p)
            v = tuple(c * inv % self.p for c in v)
        lo, hi = 0, len(rows)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.pivot(rows[mid]) > h:
                lo = mid + 1
            else:
                hi = mid
        rows.insert(lo, v)
        return True

    def canon(self, rows: Iterable) -> tuple:
        """Unique reduced echelon key for the span of rows."""
        basis: list = []
        for v in rows:
            self.insert(basis, v)
        # back-substitute so entries above every pivot vanish
        for i in range(len(basis) - 1, -1, -1):
            below = basis[i + 1:]
            if self.packed:
                v = basis[i]
                for r in below:
                    h = r.bit_length() - 1
                    if (v >> h) & 1:
                        v ^= r
                basis[i] = v
            else:
                basis[i] = self.reduce(basis[i], below)
        return tuple(basis)

    def span_members(self, rows) -> Iterator:
        """All nonzero vectors of the span (p^k - 1 of them)."""
        rows = list(rows)
        k = len(rows)
        coeffs = [0] * k
        total = self.p ** k
        for idx in range(1, total):
            t = idx
            v = self.zero()
            for r in rows:
                t, c = divmod(t, self.p)
                if c:
                    v = self.add(v, self.smul(c, r))
            yield v

    def span_min(self, rows) -> int:
        """Smallest nonzero canonical key in the span."""
        return min(self.encode(v) for v in self.span_members(rows))

    # -- linear maps -----------------------------------------------------------

    def map_from_images(self, images: list) -> Callable:
        """Linear map from basis images; fast apply (chunk tables if p=2)."""
        if not self.packed:
            p, n = self.p, self.n
            cols = [tuple(img) for img in images]

            def apply_odd(v, _cols=cols, _p=p, _n=n):
                acc = [0] * _n
                for j, c in enumerate(v):
                    if c:
                        col = _cols[j]
                        for i in range(_n):
                            acc[i] += c * col[i]
                return tuple(a % _p for a in acc)

            return apply_odd
        tables = []
        for base in range(0, self.n, 8):
            chunk = images[base:base + 8]
            tbl = [0] * (1 << len(chunk))
            for bits in range(1, 1 << len(chunk)):
                low = bits & -bits
                tbl[bits] = tbl[bits ^ low] ^ chunk[low.bit_length() - 1]
            tables.append(tbl)
        if len(tables) == 1:
            t0 = tables[0]

            def apply1(v, _t0=t0):
                return _t0[v]

            return apply1
        if len(tables) == 2:
            t0, t1 = tables

            def apply2(v, _t0=t0, _t1=t1):
                return _t0[v & 255] ^ _t1[v >> 8]

            return apply2
        if len(tables) == 3:
            t0, t1, t2 = tables

            def apply3(v, _t0=t0, _t1=t1, _t2=t2):
                return _t0[v & 255] ^ _t1[(v >> 8) & 255] ^ _t2[v >> 16]

            return apply3

        def apply_many(v, _tables=tables):
            acc = 0
            for t in _tables:
                acc ^= t[v & 255]
                v >>= 8
            return acc

        return apply_many

    def matrix_of(self, apply_fn: Callable) -> list:
        """Basis images of a map given as a callable."""
        return [apply_fn(self.unit(j)) for j in range(self.n)]

    def kernel(self, images: list) -> tuple:
        """Canonical basis of {x : sum x_j images[j] = 0}."""
        aug: list[tuple] = []  # (reduced image row, tag row in F_p^n)
        kernel_rows = []
        tag_space = self
        for j in range(self.n):
            img = images[j]
            tag = self.unit(j)
            for rimg, rtag in aug:
                if self.packed:
                    h = rimg.bit_length() - 1
                    if (img >> h) & 1:
                        img ^= rimg
                        tag ^= rtag
                else:
                    h = self.pivot(rimg)
                    c = img[h]
                    if c:
                        f = c * pow(rimg[h], -1, self.p) % self.p
                        img = tuple((a - f * b) % self.p for a, b in zip(img, rimg))
                        tag = tuple((a - f * b) % self.p for a, b in zip(tag, rtag))
            if self.pivot(img) < 0:
                kernel_rows.append(tag)
            else:
                aug.append((img, tag))
                aug.sort(key=lambda t: -self.pivot(t[0]))
        return tag_space.canon(kernel_rows)

    def solve(self, basis_rows: list, v):
        """Coefficients of v in the given (independent) rows, or None."""
        aug = []
        for j, r in enumerate(basis_rows):
            aug.append((r, self.unit_k(len(basis_rows), j)))
        # gaussian elimination on (row, coeff-tag) pairs
        red: list[tuple] = []
        for row, tag in aug:
            for rr, rt in red:
                h = self.pivot(rr)
                c = row[h] if not self.packed else (row >> h) & 1
                if c:
                    if self.packed:
                        row ^= rr
                        tag = tuple((a + b) % 2 for a, b in zip(tag, rt))
                    else:
                        f = c * pow(rr[h], -1, self.p) % self.p
                        row = tuple((a - f * b) % self.p for a, b in zip(row, rr))
                        tag = tuple((a - f * b) % self.p for a, b in zip(tag, rt))
            if self.pivot(row) >= 0:
                red.append((row, tag))
                red.sort(key=lambda t: -self.pivot(t[0]))
        coeffs = [0] * len(basis_rows)
        for rr, rt in red:
            h = self.pivot(rr)
            c = v[h] if not self.packed else (v >> h) & 1
            if c:
                f = c * pow(rr[h] if not self.packed else 1, -1, self.p) % self.p
                if self.packed:
                    v ^= rr
                else:
                    v = tuple((a - f * b) % self.p for a, b in zip(v, rr))
                for j in range(len(coeffs)):
                    coeffs[j] = (coeffs[j] + f * rt[j]) % self.p
        if self.pivot(v) >= 0:
            return None
        return tuple(coeffs)

    @staticmethod
    def unit_k(k: int, j: int) -> tuple:
        return tuple(1 if i == j else 0 for i in range(k))

    def dim_check(self, rows) -> int:
        return len(self.canon(rows))

    def component(self, v, j: int) -> int:
        return (v >> j) & 1 if self.packed else v[j]

    def nullspace(self, rows) -> tuple:
        """Canonical basis of {x : r . x = 0 for all r in rows} where the
        dot product is coordinatewise over F_p."""
        basis = list(self.canon(rows))
        pivots = {self.pivot(r): r for r in basis}
        out = []
        for j in range(self.n):
            if j in pivots:
                continue
            if self.packed:
                vec = 1 << j
                for piv, r in pivots.items():
                    if (r >> j) & 1:
                        vec |= 1 << piv
            else:
                coords = [0] * self.n
                coords[j] = 1
                for piv, r in pivots.items():
                    coords[piv] = (-r[j]) % self.p
                vec = tuple(coords)
            out.append(vec)
        return self.canon(out)


def coords_to_vec(sub: VecSpace, coords: tuple):
    if sub.packed:
        return sum(1 << j for j, c in enumerate(coords) if c & 1)
    return tuple(coords)


def restrict_map(space: VecSpace, block_rows: list, apply_fn: Callable,
                 sub: VecSpace) -> list:
    """Basis images, in block coordinates, of a map restricted to the span
    of block_rows; raises if the span is not invariant."""
    images = []
    for r in block_rows:
        coords = space.solve(block_rows, apply_fn(r))
        if coords is None:
            raise DomainError("subspace is not invariant under the map")
        images.append(coords_to_vec(sub, coords))
    return images

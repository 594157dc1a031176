"""Systematic MDS erasure codes built from Cauchy parity blocks.

A code is held as its kappa x eta generator in the form (I | A) with
A[j][i] = 1 / (x_i + y_j), x_i = i and y_j = (eta - kappa) + j.  Every
square submatrix of a Cauchy matrix is invertible, so any kappa received
symbols determine the whole codeword.  Decoding inverts the block of
surviving columns; inverses and reconstruction matrices are cached per
survivor set, which is what makes repeated decode calls cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnrecoverableError
from .gf import Field


@dataclass
class Codeword:
    """Positioned symbols of one codeword; ``None`` marks an erasure."""

    symbols: list

    def present_positions(self) -> list[int]:
        return [i for i, s in enumerate(self.symbols) if s is not None]

    def erased_positions(self) -> list[int]:
        return [i for i, s in enumerate(self.symbols) if s is None]


class GenMatrix:
    """Systematic generator of an (eta, kappa) MDS code over a field."""

    def __init__(self, field: Field, kappa: int, eta: int):
        if not 0 < kappa < eta:
            raise ValueError(f"need 0 < kappa < eta, got kappa={kappa} eta={eta}")
        if eta > field.order:
            raise ValueError(f"eta={eta} exceeds field size 2^{field.w}={field.order}")
        self.field = field
        self.kappa = kappa
        self.eta = eta
        self.rows = self._build()
        self._inv_cache: dict[tuple[int, ...], np.ndarray] = {}
        self._decode_cache: dict[tuple[tuple[int, ...], tuple[int, ...]], np.ndarray] = {}

    def _build(self) -> np.ndarray:
        f = self.field
        kappa, eta = self.kappa, self.eta
        rows = np.zeros((kappa, eta), dtype=f.word_dtype)
        rows[:, :kappa] = f.identity(kappa)
        for j in range(kappa):           # data index
            y = (eta - kappa) + j
            for i in range(eta - kappa):  # parity index
                rows[j, kappa + i] = f.inverse(i ^ y)
        return rows

    @property
    def parity_block(self) -> np.ndarray:
        return self.rows[:, self.kappa:]

    def decode_matrix(self, survivors: tuple[int, ...], targets: tuple[int, ...]) -> np.ndarray:
        """Matrix T with ``targets = T @ survivors`` over symbol regions.

        ``survivors`` must list exactly kappa distinct positions; the result
        has shape (len(targets), kappa) and is cached.
        """
        key = (survivors, targets)
        cached = self._decode_cache.get(key)
        if cached is not None:
            return cached
        if len(survivors) != self.kappa:
            raise ValueError(f"need exactly kappa={self.kappa} survivors, got {len(survivors)}")
        inv = self._inv_cache.get(survivors)
        if inv is None:
            inv = self.field.mat_inv(self.rows[:, list(survivors)])
            self._inv_cache[survivors] = inv
        t = self.field.mat_mul(inv, self.rows[:, list(targets)]).T.copy()
        self._decode_cache[key] = t
        return t


def systematic_generator(kappa: int, eta: int, field: Field) -> GenMatrix:
    """Deterministic systematic MDS generator for the given shape."""
    return GenMatrix(field, kappa, eta)


def encode(gen: GenMatrix, data: np.ndarray) -> np.ndarray:
    """Compute the eta-kappa parity regions for (kappa, S) data regions."""
    data = np.asarray(data)
    if data.shape[0] != gen.kappa:
        raise ValueError(f"expected {gen.kappa} data regions, got {data.shape[0]}")
    t = gen.decode_matrix(tuple(range(gen.kappa)), tuple(range(gen.kappa, gen.eta)))
    return gen.field.matmul_regions(t, data)


def decode(gen: GenMatrix, word: Codeword) -> Codeword:
    """Fill in the erased symbols of ``word`` from any kappa survivors."""
    missing = word.erased_positions()
    if not missing:
        return word
    present = word.present_positions()
    if len(present) < gen.kappa:
        raise UnrecoverableError(
            f"only {len(present)} of {gen.eta} symbols present, need {gen.kappa}")
    survivors = tuple(present[:gen.kappa])
    t = gen.decode_matrix(survivors, tuple(missing))
    stacked = np.stack([word.symbols[p] for p in survivors])
    restored = gen.field.matmul_regions(t, stacked)
    symbols = list(word.symbols)
    for k, pos in enumerate(missing):
        symbols[pos] = restored[k]
    return Codeword(symbols)


def check_codeword(gen: GenMatrix, symbols: np.ndarray) -> bool:
    """True iff the parity positions equal the re-encoded parities."""
    symbols = np.asarray(symbols)
    if symbols.shape[0] != gen.eta:
        raise ValueError(f"expected {gen.eta} symbols, got {symbols.shape[0]}")
    return bool(np.array_equal(encode(gen, symbols[:gen.kappa]), symbols[gen.kappa:]))

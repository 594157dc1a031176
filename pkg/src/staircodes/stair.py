"""Stair-layout erasure codec: configuration, encoders, decoder, cost model.

A stripe is an r x n grid of symbol regions: n-m data chunks followed by
m row-parity chunks, with s extra global-parity cells embedded in a stair
pattern at the bottom of the m' rightmost data chunks (column
n-m-m'+l holds e_l of them).  Conceptually the stripe is extended to a
(r+e_max) x (n+m') grid: every row of the extension is a codeword of the
row code (an (n+m', n-m) MDS code) and every column ends in column-code
parities (an (r+e_max, r) MDS code); the outside global cells of that
grid are pinned to zero so they never need storing.  Encoding and
decoding are schedules of row/column MDS operations on that grid.

Two reuse-based encoders are provided ("upstairs" recovers parities
bottom-up and generalises to arbitrary decoding, "downstairs" sweeps
top-down and right-to-left) plus a "standard" encoder that applies the
flattened data-to-parity coefficients directly.  All three produce
byte-identical parities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnrecoverableError
from .gf import DEFAULT_POLY, Field, field_init
from .mds import GenMatrix

METHODS = ("downstairs", "upstairs", "standard")   # also the tie-break order


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StairConfig:
    """Code geometry: n devices, r sectors per chunk, m whole-chunk failures
    tolerated, e = per-chunk sector-failure tolerances (sorted ascending)."""

    n: int
    r: int
    m: int
    e: tuple[int, ...] = ()
    w: int = 8

    def __post_init__(self):
        if self.n < 1 or self.r < 1:
            raise ValueError(f"n and r must be at least 1, got n={self.n} r={self.r}")
        if not 0 <= self.m < self.n:
            raise ValueError(f"m must satisfy 0 <= m < n, got m={self.m} n={self.n}")
        if self.w not in (8, 16, 32):
            raise ValueError(f"field width w must be 8, 16 or 32, got {self.w}")
        e = self.e
        if any(not isinstance(x, int) or x < 1 for x in e):
            raise ValueError(f"coverage entries must be positive integers, got e={e}")
        if list(e) != sorted(e):
            raise ValueError(f"coverage vector must be sorted ascending, got e={e}")
        if e and e[-1] > self.r:
            raise ValueError(f"largest coverage entry e_max={e[-1]} exceeds r={self.r}")
        if self.m + len(e) > self.n:
            raise ValueError(f"m + m' = {self.m + len(e)} exceeds n={self.n}")
        if self.m + len(e) < 1:
            raise ValueError("need at least one parity symbol: m + m' must be >= 1")
        if self.n + len(e) > 2 ** self.w:
            raise ValueError(f"n + m' = {self.n + len(e)} exceeds field size 2^{self.w}")
        if self.r + (e[-1] if e else 0) > 2 ** self.w:
            raise ValueError(f"r + e_max = {self.r + e[-1]} exceeds field size 2^{self.w}")

    @property
    def m_prime(self) -> int:
        return len(self.e)

    @property
    def s(self) -> int:
        return sum(self.e)

    @property
    def e_max(self) -> int:
        return self.e[-1] if self.e else 0

    @property
    def data_chunks(self) -> int:
        return self.n - self.m

    @property
    def data_cell_count(self) -> int:
        return self.r * (self.n - self.m) - self.s

    @property
    def parity_cell_count(self) -> int:
        return self.m * self.r + self.s


def config_new(n: int, r: int, m: int, e=(), w: int = 8) -> StairConfig:
    """Validate parameters and build a config; e is canonicalised (sorted).

    Two degenerate corners are accepted as extensions: an empty e (m' = 0)
    collapses to a plain device-level MDS code, and m = 0 gives pure
    sector-failure coverage with no whole-device tolerance.
    """
    return StairConfig(int(n), int(r), int(m), tuple(sorted(int(x) for x in e)), int(w))


# ---------------------------------------------------------------------------
# cell layout
# ---------------------------------------------------------------------------

def stair_column_index(cfg: StairConfig, l: int) -> int:
    """Data column holding the l-th run of global-parity cells."""
    return cfg.n - cfg.m - cfg.m_prime + l


def global_parity_depth(cfg: StairConfig, j: int) -> int:
    """Number of global-parity cells at the bottom of data column j (0 if none)."""
    l = j - (cfg.n - cfg.m - cfg.m_prime)
    if 0 <= l < cfg.m_prime and j < cfg.n - cfg.m:
        return cfg.e[l]
    return 0


def cell_role(cfg: StairConfig, i: int, j: int) -> str:
    """Role of stripe cell (i, j): "data", "row_parity" or "global_parity"."""
    if not (0 <= i < cfg.r and 0 <= j < cfg.n):
        raise ValueError(f"cell ({i}, {j}) outside the {cfg.r} x {cfg.n} stripe")
    if j >= cfg.n - cfg.m:
        return "row_parity"
    if i >= cfg.r - global_parity_depth(cfg, j):
        return "global_parity"
    return "data"


def data_cells(cfg: StairConfig) -> list[tuple[int, int]]:
    """Data cells in chunk-major order (the container fill order)."""
    return [(i, j) for j in range(cfg.n - cfg.m) for i in range(cfg.r)
            if i < cfg.r - global_parity_depth(cfg, j)]


def parity_cells(cfg: StairConfig) -> list[tuple[int, int]]:
    """All stored parity cells: row parities chunk-major, then stair cells."""
    out = [(i, j) for j in range(cfg.n - cfg.m, cfg.n) for i in range(cfg.r)]
    for l in range(cfg.m_prime):
        j = stair_column_index(cfg, l)
        out.extend((i, j) for i in range(cfg.r - cfg.e[l], cfg.r))
    return out


def parity_mask(cfg: StairConfig) -> np.ndarray:
    mask = np.zeros((cfg.r, cfg.n), dtype=bool)
    for i, j in parity_cells(cfg):
        mask[i, j] = True
    return mask


# ---------------------------------------------------------------------------
# stripes and failure patterns
# ---------------------------------------------------------------------------

@dataclass
class Stripe:
    """One r x n grid of equally sized symbol regions."""

    cfg: StairConfig
    cells: np.ndarray    # (r, n, symbol_size) uint8

    @property
    def symbol_size(self) -> int:
        return int(self.cells.shape[2])

    @classmethod
    def zeros(cls, cfg: StairConfig, symbol_size: int) -> "Stripe":
        if symbol_size < 1 or symbol_size % (cfg.w // 8):
            raise ValueError(
                f"symbol size {symbol_size} is not a positive multiple of {cfg.w // 8} bytes")
        return cls(cfg, np.zeros((cfg.r, cfg.n, symbol_size), dtype=np.uint8))

    @classmethod
    def random(cls, cfg: StairConfig, symbol_size: int, rng: np.random.Generator) -> "Stripe":
        """Random data cells, zeroed (unencoded) parity cells."""
        stripe = cls.zeros(cfg, symbol_size)
        stripe.cells[:] = rng.integers(0, 256, stripe.cells.shape, dtype=np.uint8)
        stripe.cells[parity_mask(cfg)] = 0
        return stripe

    def copy(self) -> "Stripe":
        return Stripe(self.cfg, self.cells.copy())


@dataclass
class CanonicalStripe:
    """The (r+e_max) x (n+m') augmented grid of a fully encoded stripe."""

    cfg: StairConfig
    cells: np.ndarray    # (r + e_max, n + m', symbol_size) uint8

    @property
    def symbol_size(self) -> int:
        return int(self.cells.shape[2])

    def stripe(self) -> Stripe:
        return Stripe(self.cfg, self.cells[:self.cfg.r, :self.cfg.n].copy())


@dataclass(frozen=True, eq=True)
class FailurePattern:
    """Whole-chunk failures plus per-chunk erased-row sets (disjoint from them)."""

    failed_chunks: frozenset
    sector_failures: dict    # column -> frozenset of erased rows

    @staticmethod
    def make(failed=(), sectors=None) -> "FailurePattern":
        norm = {}
        for j, rows in (sectors or {}).items():
            rows = frozenset(int(i) for i in rows)
            if rows:
                norm[int(j)] = rows
        return FailurePattern(frozenset(int(j) for j in failed), norm)

    def validate_for(self, cfg: StairConfig) -> None:
        for j in self.failed_chunks:
            if not 0 <= j < cfg.n:
                raise ValueError(f"failed chunk {j} outside 0..{cfg.n - 1}")
        for j, rows in self.sector_failures.items():
            if not 0 <= j < cfg.n:
                raise ValueError(f"sector-failure chunk {j} outside 0..{cfg.n - 1}")
            if j in self.failed_chunks:
                raise ValueError(f"chunk {j} listed both failed and with sector failures")
            for i in rows:
                if not 0 <= i < cfg.r:
                    raise ValueError(f"sector row {i} outside 0..{cfg.r - 1}")

    @property
    def is_empty(self) -> bool:
        return not self.failed_chunks and not self.sector_failures

    def lost_cells(self, cfg: StairConfig):
        for j in sorted(self.failed_chunks):
            for i in range(cfg.r):
                yield i, j
        for j in sorted(self.sector_failures):
            for i in sorted(self.sector_failures[j]):
                yield i, j


def counts_within_coverage(cfg: StairConfig, counts) -> bool:
    """True iff the nonzero per-chunk loss counts fit the tail of e."""
    counts = sorted(c for c in counts if c)
    if len(counts) > cfg.m_prime:
        return False
    off = cfg.m_prime - len(counts)
    return all(c <= cfg.e[off + t] for t, c in enumerate(counts))


def pattern_within_coverage(cfg: StairConfig, pattern: FailurePattern) -> bool:
    pattern.validate_for(cfg)
    if len(pattern.failed_chunks) > cfg.m:
        return False
    return counts_within_coverage(cfg, (len(v) for v in pattern.sector_failures.values()))


def worst_case_pattern(cfg: StairConfig) -> FailurePattern:
    """m failed chunks plus the full stair of sector failures."""
    failed = range(cfg.n - cfg.m, cfg.n)
    sectors = {stair_column_index(cfg, l): range(cfg.r - e_l, cfg.r)
               for l, e_l in enumerate(cfg.e)}
    return FailurePattern.make(failed, sectors)


# ---------------------------------------------------------------------------
# schedule steps
# ---------------------------------------------------------------------------

class Step:
    """One row/column MDS operation on the augmented grid.

    ``inputs``/``outputs`` are (row, col) grid cells; ``matrix`` maps the
    stacked input regions to the output regions.
    """

    __slots__ = ("kind", "index", "inputs", "outputs", "matrix", "_in_idx", "_out_idx")

    def __init__(self, kind, index, inputs, outputs, matrix):
        self.kind = kind
        self.index = index
        self.inputs = tuple(inputs)
        self.outputs = tuple(outputs)
        self.matrix = matrix
        self._in_idx = (np.array([c[0] for c in self.inputs], dtype=np.intp),
                        np.array([c[1] for c in self.inputs], dtype=np.intp))
        self._out_idx = (np.array([c[0] for c in self.outputs], dtype=np.intp),
                         np.array([c[1] for c in self.outputs], dtype=np.intp))

    @property
    def signature(self):
        return (self.kind, self.inputs, self.outputs)

    def apply(self, fld: Field, grid: np.ndarray) -> None:
        grid[self._out_idx] = fld.matmul_regions(self.matrix, grid[self._in_idx])

    def __repr__(self):  # pragma: no cover
        return f"Step({self.kind} {self.index}: {len(self.inputs)}->{len(self.outputs)})"


class _Solver:
    """Mutable decode/encode state: grid values, known mask, emitted steps."""

    __slots__ = ("codec", "grid", "known", "steps")

    def __init__(self, codec, grid, known):
        self.codec = codec
        self.grid = grid
        self.known = known
        self.steps: list[Step] = []

    def row_step(self, i: int, out_cells) -> None:
        cfg = self.codec.cfg
        kappa = cfg.n - cfg.m
        avail = np.flatnonzero(self.known[i])
        if avail.size < kappa:
            raise UnrecoverableError(
                f"row {i}: only {avail.size} symbols available, need {kappa}")
        in_cols = tuple(int(c) for c in avail[:kappa])
        out_cols = tuple(c for _, c in out_cells)
        mat = self.codec.row_code.decode_matrix(in_cols, out_cols)
        st = Step("row", i, tuple((i, c) for c in in_cols), out_cells, mat)
        st.apply(self.codec.field, self.grid)
        self.known[i, list(out_cols)] = True
        self.steps.append(st)

    def col_step(self, j: int, out_cells) -> None:
        cfg = self.codec.cfg
        avail = np.flatnonzero(self.known[:, j])
        if avail.size < cfg.r:
            raise UnrecoverableError(
                f"column {j}: only {avail.size} symbols available, need {cfg.r}")
        in_rows = tuple(int(i) for i in avail[:cfg.r])
        out_rows = tuple(i for i, _ in out_cells)
        mat = self.codec.col_code.decode_matrix(in_rows, out_rows)
        st = Step("col", j, tuple((i, j) for i in in_rows), out_cells, mat)
        st.apply(self.codec.field, self.grid)
        self.known[list(out_rows), j] = True
        self.steps.append(st)


def _run_upstairs(solver: _Solver, deferred: dict, lossy: dict) -> None:
    """Bottom-up recovery: extend complete chunks, then alternate extension
    rows and damaged chunks in ascending loss order, then rebuild the
    deferred chunks row by row."""
    cfg = solver.codec.cfg
    r, n = cfg.r, cfg.n
    levels = max((len(v) for v in lossy.values()), default=0)
    order = sorted(lossy, key=lambda j: (len(lossy[j]), j))
    if levels:
        for j in range(n):
            if j not in deferred and j not in lossy:
                solver.col_step(j, tuple((r + h, j) for h in range(levels)))
        level_done = [False] * levels
        for idx, j in enumerate(order):
            c = len(lossy[j])
            for h in range(c):
                if not level_done[h]:
                    outs = tuple(sorted((r + h, jj) for jj in order[idx:]))
                    solver.row_step(r + h, outs)
                    level_done[h] = True
            l_rem = max((len(lossy[jj]) for jj in order[idx + 1:]), default=0)
            outs = tuple((i, j) for i in sorted(lossy[j]))
            outs += tuple((r + h, j) for h in range(c, l_rem))
            solver.col_step(j, outs)
    for i in range(r):
        outs = tuple((i, j) for j in sorted(deferred) if i in deferred[j])
        if outs:
            solver.row_step(i, outs)


# ---------------------------------------------------------------------------
# codec (cached per config)
# ---------------------------------------------------------------------------

class _Codec:
    def __init__(self, cfg: StairConfig, poly: int | None = None):
        self.cfg = cfg
        self.field = field_init(cfg.w, poly)
        self.row_code = GenMatrix(self.field, cfg.n - cfg.m, cfg.n + cfg.m_prime)
        self.col_code = (GenMatrix(self.field, cfg.r, cfg.r + cfg.e_max)
                         if cfg.m_prime else None)
        self._plans: dict[str, tuple[Step, ...]] = {}
        self._coef = None
        dc = data_cells(cfg)
        self.data_cell_list = dc
        self.data_index = {cell: k for k, cell in enumerate(dc)}
        self._data_rows = np.array([i for i, _ in dc], dtype=np.intp)
        self._data_cols = np.array([j for _, j in dc], dtype=np.intp)

    @property
    def grid_shape(self) -> tuple[int, int]:
        return self.cfg.r + self.cfg.e_max, self.cfg.n + self.cfg.m_prime

    def base_known(self) -> np.ndarray:
        """Known mask with only the pinned-to-zero outside global cells set."""
        rows, cols = self.grid_shape
        known = np.zeros((rows, cols), dtype=bool)
        for l, e_l in enumerate(self.cfg.e):
            known[self.cfg.r: self.cfg.r + e_l, self.cfg.n + l] = True
        return known

    def blank_grid(self, symbol_size: int) -> np.ndarray:
        rows, cols = self.grid_shape
        return np.zeros((rows, cols, symbol_size), dtype=np.uint8)

    def gather_data(self, stripe: Stripe) -> np.ndarray:
        if not self.data_cell_list:
            return np.zeros((0, stripe.symbol_size), dtype=np.uint8)
        return stripe.cells[self._data_rows, self._data_cols]

    # -- encode plans -------------------------------------------------------

    def plan(self, method: str) -> tuple[Step, ...]:
        cached = self._plans.get(method)
        if cached is None:
            if method == "upstairs":
                cached = tuple(self._plan_upstairs())
            elif method == "downstairs":
                cached = tuple(self._plan_downstairs())
            else:
                raise ValueError(f"no step plan for method {method!r}")
            self._plans[method] = cached
        return cached

    def _encode_solver(self) -> tuple[_Solver, dict, dict]:
        cfg = self.cfg
        known = self.base_known()
        known[:cfg.r, :cfg.n] = True
        deferred = {j: set(range(cfg.r)) for j in range(cfg.n - cfg.m, cfg.n)}
        for j in deferred:
            known[:cfg.r, j] = False
        lossy = {}
        for l, e_l in enumerate(cfg.e):
            j = stair_column_index(cfg, l)
            rows = set(range(cfg.r - e_l, cfg.r))
            lossy[j] = rows
            known[cfg.r - e_l: cfg.r, j] = False
        solver = _Solver(self, self.blank_grid(self.field.word_bytes), known)
        return solver, deferred, lossy

    def _plan_upstairs(self) -> list[Step]:
        solver, deferred, lossy = self._encode_solver()
        _run_upstairs(solver, deferred, lossy)
        return solver.steps

    def _plan_downstairs(self) -> list[Step]:
        cfg = self.cfg
        solver, _, _ = self._encode_solver()
        r, n, mp = cfg.r, cfg.n, cfg.m_prime
        col_done = [False] * mp
        for i in range(r):
            for l in range(mp - 1, -1, -1):
                if not col_done[l] and cfg.e[l] >= r - i:
                    col = n + l
                    outs = tuple((ii, col) for ii in range(r - cfg.e[l], r))
                    solver.col_step(col, outs)
                    col_done[l] = True
            stair_ls = [l for l in range(mp) if cfg.e[l] >= r - i]
            out_cols = [j for j in range(n - cfg.m) if global_parity_depth(cfg, j) >= r - i]
            out_cols += list(range(n - cfg.m, n))
            out_cols += [n + l for l in range(mp) if l not in stair_ls]
            solver.row_step(i, tuple((i, j) for j in sorted(out_cols)))
        return solver.steps

    def apply_plan(self, stripe: Stripe, steps) -> Stripe:
        cfg = self.cfg
        grid = self.blank_grid(stripe.symbol_size)
        grid[:cfg.r, :cfg.n] = stripe.cells
        for st in steps:
            st.apply(self.field, grid)
        stripe.cells[:] = grid[:cfg.r, :cfg.n]
        return stripe

    # -- flattened data -> parity coefficients --------------------------------

    def coefficients(self):
        """(P, D) coefficient matrix over the field, plus cell orderings.

        Row p gives the linear combination of data cells that forms parity
        cell ``parity_cells(cfg)[p]``; derived once by pushing unit vectors
        through the upstairs plan.
        """
        if self._coef is None:
            cfg = self.cfg
            dcells = self.data_cell_list
            pcells = parity_cells(cfg)
            wb = self.field.word_bytes
            grid = self.blank_grid(len(dcells) * wb)
            for k, (i, j) in enumerate(dcells):
                grid[i, j, k * wb] = 1          # unit field element, little-endian
            for st in self.plan("upstairs"):
                st.apply(self.field, grid)
            coef = np.zeros((len(pcells), len(dcells)), dtype=self.field.word_dtype)
            for p, (i, j) in enumerate(pcells):
                coef[p] = grid[i, j].view(self.field.word_dtype)
            nonzero = [np.flatnonzero(coef[p]) for p in range(len(pcells))]
            self._coef = (coef, dcells, pcells, nonzero)
        return self._coef


_CODEC_CACHE: dict[tuple[StairConfig, int], _Codec] = {}


def _codec(cfg: StairConfig, poly: int | None = None) -> _Codec:
    key = (cfg, DEFAULT_POLY[cfg.w] if poly is None else poly)
    codec = _CODEC_CACHE.get(key)
    if codec is None:
        codec = _Codec(cfg, poly)
        _CODEC_CACHE[key] = codec
    return codec


def _check_stripe(cfg: StairConfig, stripe: Stripe) -> None:
    if stripe.cfg != cfg:
        raise ValueError("stripe was built for a different config")
    r, n, sym = stripe.cells.shape
    if (r, n) != (cfg.r, cfg.n):
        raise ValueError(f"stripe shape {(r, n)} does not match config {(cfg.r, cfg.n)}")
    if sym % (cfg.w // 8):
        raise ValueError(f"symbol size {sym} is not a multiple of {cfg.w // 8} bytes")


# ---------------------------------------------------------------------------
# public encoders / decoder
# ---------------------------------------------------------------------------

def encode_upstairs(cfg: StairConfig, stripe: Stripe, poly: int | None = None) -> Stripe:
    """Fill all parity cells by bottom-up recovery of the augmented grid."""
    codec = _codec(cfg, poly)
    _check_stripe(cfg, stripe)
    return codec.apply_plan(stripe, codec.plan("upstairs"))


def encode_downstairs(cfg: StairConfig, stripe: Stripe, poly: int | None = None) -> Stripe:
    """Fill all parity cells sweeping rows top-down and columns right-to-left."""
    codec = _codec(cfg, poly)
    _check_stripe(cfg, stripe)
    return codec.apply_plan(stripe, codec.plan("downstairs"))


def encode_standard(cfg: StairConfig, stripe: Stripe, poly: int | None = None) -> Stripe:
    """Fill each parity cell directly from its data-cell dependency set."""
    codec = _codec(cfg, poly)
    _check_stripe(cfg, stripe)
    coef, _, pcells, nonzero = codec.coefficients()
    data = codec.gather_data(stripe)
    for p, cell in enumerate(pcells):
        nz = nonzero[p]
        out = codec.field.matmul_regions(coef[p:p + 1, nz], data[nz])
        stripe.cells[cell] = out[0]
    return stripe


def encode(cfg: StairConfig, stripe: Stripe, method: str = "auto",
           poly: int | None = None) -> Stripe:
    if method == "auto":
        method = choose_method(cfg)
    if method == "standard":
        return encode_standard(cfg, stripe, poly)
    if method == "upstairs":
        return encode_upstairs(cfg, stripe, poly)
    if method == "downstairs":
        return encode_downstairs(cfg, stripe, poly)
    raise ValueError(f"unknown encoding method {method!r}")


def encoding_steps(cfg: StairConfig, method: str, poly: int | None = None) -> tuple[Step, ...]:
    """The cached step schedule of a reuse-based encoder (for inspection)."""
    return _codec(cfg, poly).plan(method)


def build_canonical(cfg: StairConfig, stripe: Stripe, poly: int | None = None) -> CanonicalStripe:
    """Augment an encoded stripe with its intermediate and virtual parities."""
    codec = _codec(cfg, poly)
    _check_stripe(cfg, stripe)
    grid = codec.blank_grid(stripe.symbol_size)
    grid[:cfg.r, :cfg.n] = stripe.cells
    if cfg.m_prime:
        t_row = codec.row_code.decode_matrix(
            tuple(range(cfg.n - cfg.m)), tuple(range(cfg.n, cfg.n + cfg.m_prime)))
        for i in range(cfg.r):
            grid[i, cfg.n:] = codec.field.matmul_regions(t_row, grid[i, :cfg.n - cfg.m])
        t_col = codec.col_code.decode_matrix(
            tuple(range(cfg.r)), tuple(range(cfg.r, cfg.r + cfg.e_max)))
        for c in range(cfg.n + cfg.m_prime):
            grid[cfg.r:, c] = codec.field.matmul_regions(t_col, grid[:cfg.r, c])
    return CanonicalStripe(cfg, grid)


def decode(cfg: StairConfig, stripe: Stripe, pattern: FailurePattern, *,
           practical: bool = True, poly: int | None = None,
           trace: list | None = None) -> Stripe:
    """Restore the cells listed in ``pattern`` and return the repaired stripe.

    With ``practical=True`` rows that lost at most m cells are repaired
    locally first, then the (at most m) chunks with the most remaining
    losses are set aside for final row-wise repair while the rest go
    through the bottom-up schedule.  ``practical=False`` runs the pure
    bottom-up schedule with exactly the pattern's failed chunks deferred.
    Raises :class:`UnrecoverableError` instead of returning wrong data.
    """
    codec = _codec(cfg, poly)
    _check_stripe(cfg, stripe)
    pattern.validate_for(cfg)

    grid = codec.blank_grid(stripe.symbol_size)
    grid[:cfg.r, :cfg.n] = stripe.cells
    known = codec.base_known()
    known[:cfg.r, :cfg.n] = True
    for i, j in pattern.lost_cells(cfg):
        known[i, j] = False
        grid[i, j] = 0           # never trust erased bytes

    solver = _Solver(codec, grid, known)
    if practical:
        for i in range(cfg.r):
            miss = np.flatnonzero(~known[i, :cfg.n])
            if miss.size and miss.size <= cfg.m:
                solver.row_step(i, tuple((i, int(j)) for j in miss))

    loss: dict[int, set[int]] = {}
    for j in range(cfg.n):
        rows = np.flatnonzero(~known[:cfg.r, j])
        if rows.size:
            loss[j] = {int(i) for i in rows}

    if loss:
        if practical:
            by_size = sorted(loss, key=lambda j: (len(loss[j]), j), reverse=True)
            defer_cols = by_size[:cfg.m]
        else:
            defer_cols = sorted(pattern.failed_chunks)
            if len(defer_cols) > cfg.m:
                raise UnrecoverableError(
                    f"{len(defer_cols)} whole-chunk failures exceed m={cfg.m}")
        deferred = {j: loss.pop(j) for j in defer_cols if j in loss}
        counts = sorted(len(v) for v in loss.values())
        if not counts_within_coverage(cfg, counts):
            raise UnrecoverableError(
                f"per-chunk sector losses {counts} exceed coverage e={cfg.e}")
        _run_upstairs(solver, deferred, loss)

    if trace is not None:
        trace.extend(solver.steps)
    return Stripe(cfg, grid[:cfg.r, :cfg.n].copy())


# ---------------------------------------------------------------------------
# cost model and parity dependencies
# ---------------------------------------------------------------------------

def xor_count(cfg: StairConfig, method: str) -> int:
    """Region multiply-XOR operations per stripe for an encoding method."""
    nm = cfg.n - cfg.m
    if method == "upstairs":
        return nm * (cfg.m * cfg.r + cfg.s) + cfg.r * (nm * cfg.e_max)
    if method == "downstairs":
        return nm * ((cfg.m + cfg.m_prime) * cfg.r) + cfg.r * cfg.s
    if method == "standard":
        return int(sum(len(nz) for nz in _codec(cfg).coefficients()[3]))
    raise ValueError(f"unknown encoding method {method!r}")


def choose_method(cfg: StairConfig) -> str:
    """Cheapest encoding method; ties go downstairs < upstairs < standard."""
    return min(METHODS, key=lambda meth: (xor_count(cfg, meth), METHODS.index(meth)))


def parity_dependents(cfg: StairConfig, cell: tuple[int, int]) -> frozenset:
    """Parity cells whose value changes when the given data cell changes."""
    i, j = cell
    if cell_role(cfg, i, j) != "data":
        raise ValueError(f"cell {cell} is not a data cell")
    codec = _codec(cfg)
    coef, _, pcells, _ = codec.coefficients()
    k = codec.data_index[(i, j)]
    return frozenset(pcells[p] for p in np.flatnonzero(coef[:, k]))


def update_penalty(cfg: StairConfig) -> float:
    """Mean number of parity cells touched by a single data-cell update."""
    codec = _codec(cfg)
    coef, dcells, _, _ = codec.coefficients()
    if not dcells:
        raise ValueError("config stores no data cells")
    return int(np.count_nonzero(coef)) / len(dcells)

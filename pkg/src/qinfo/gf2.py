"""GF(2) linear block codes: the [7,4,3] Hamming code, syndrome decoding,
and a Monte Carlo demonstration of coding gain on the binary symmetric
channel.

Words are written as strings of '0'/'1'; bit 0 is the leftmost character,
so words print exactly as they appear in the code tables.  Addition is
bitwise XOR.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np


def xor_words(a: str, b: str) -> str:
    if len(a) != len(b):
        raise ValueError("word lengths differ")
    return "".join("1" if x != y else "0" for x, y in zip(a, b))


def word_weight(word: str) -> int:
    return word.count("1")


def dot_parity(a: str, b: str) -> int:
    """GF(2) inner product of two words."""
    if len(a) != len(b):
        raise ValueError("word lengths differ")
    return sum(x == y == "1" for x, y in zip(a, b)) & 1


def _validate_word(word: str, n: int) -> None:
    if len(word) != n or set(word) - {"0", "1"}:
        raise ValueError(f"expected a {n}-bit word, got {word!r}")


def _word_to_int(word: str) -> int:
    # Bit 0 (leftmost char) is the least significant bit of the integer form.
    return sum(1 << i for i, ch in enumerate(word) if ch == "1")


def _int_to_word(value: int, n: int) -> str:
    return "".join(str((value >> i) & 1) for i in range(n))


@dataclass(frozen=True)
class LinearCode:
    """[n, k, d] linear code over GF(2) with syndrome-table decoding.

    `generators` are k independent rows spanning the code; `parity_checks`
    are n-k rows orthogonal to every codeword.  The syndrome table maps
    each reachable syndrome to its minimum-weight coset leader (ties broken
    toward errors on low bit indexes).
    """

    n: int
    k: int
    generators: tuple[str, ...]
    parity_checks: tuple[str, ...]
    syndrome_table: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.generators) != self.k:
            raise ValueError("need exactly k generators")
        if len(self.parity_checks) != self.n - self.k:
            raise ValueError("need exactly n-k parity checks")
        for g in self.generators:
            _validate_word(g, self.n)
        for h in self.parity_checks:
            _validate_word(h, self.n)
            for g in self.generators:
                if dot_parity(h, g):
                    raise ValueError(f"check {h} does not annihilate generator {g}")
        if _gf2_rank([_word_to_int(g) for g in self.generators]) != self.k:
            raise ValueError("generators are not linearly independent")
        if not self.syndrome_table:
            object.__setattr__(self, "syndrome_table", self._build_syndrome_table())

    # -- construction helpers ------------------------------------------------

    def _build_syndrome_table(self) -> dict[str, str]:
        table: dict[str, str] = {}
        total = 1 << (self.n - self.k)
        for weight in range(self.n + 1):
            for positions in itertools.combinations(range(self.n), weight):
                error = "".join(
                    "1" if i in positions else "0" for i in range(self.n)
                )
                s = self.syndrome(error)
                if s not in table:
                    table[s] = error
            if len(table) == total:
                break
        return table

    # -- the four basic operations -------------------------------------------

    def encode(self, message: str) -> str:
        """XOR of the generators selected by the message bits.

        Bit j of the message integer (leftmost written character most
        significant) selects generator j, which reproduces the standard
        message-to-codeword table ordering.
        """
        _validate_word(message, self.k)
        value = int(message, 2)
        word = 0
        for j, gen in enumerate(self.generators):
            if (value >> j) & 1:
                word ^= _word_to_int(gen)
        return _int_to_word(word, self.n)

    def syndrome(self, received: str) -> str:
        """Parity-check values H . received; depends only on the error."""
        _validate_word(received, self.n)
        return "".join(str(dot_parity(h, received)) for h in self.parity_checks)

    def decode(self, received: str) -> tuple[str, bool]:
        """Correct `received` to the nearest codeword and return its message.

        `corrected` is False when the syndrome has no table entry, in which
        case the leader whose syndrome is closest to the observed one is
        used as a best effort.
        """
        _validate_word(received, self.n)
        s = self.syndrome(received)
        if s in self.syndrome_table:
            error, corrected = self.syndrome_table[s], True
        else:
            error = min(
                self.syndrome_table.values(),
                key=lambda e: (sum(x != y for x, y in zip(self.syndrome(e), s)), e),
            )
            corrected = False
        codeword = xor_words(received, error)
        return self._message_of(codeword), corrected

    def min_distance(self) -> int:
        """Minimum weight over nonzero codewords (exhaustive; k <= 16)."""
        if self.k > 16:
            raise ValueError("minimum distance search limited to k <= 16")
        return min(
            word_weight(w) for w in self.codewords() if word_weight(w) > 0
        )

    # -- enumeration ----------------------------------------------------------

    def codewords(self) -> list[str]:
        """All 2^k codewords, in message order."""
        return [self.encode(format(m, f"0{self.k}b")) for m in range(1 << self.k)]

    def _message_of(self, codeword: str) -> str:
        if not hasattr(self, "_message_map"):
            if self.k > 16:
                raise ValueError("decoding table limited to k <= 16")
            mapping = {}
            for m in range(1 << self.k):
                message = format(m, f"0{self.k}b")
                mapping[self.encode(message)] = message
            object.__setattr__(self, "_message_map", mapping)
        return self._message_map[codeword]


def _gf2_rank(rows: list[int]) -> int:
    rank = 0
    pivots: list[int] = []
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            rank += 1
    return rank


def hamming_7_4() -> LinearCode:
    """The [7,4,3] Hamming code with the standard generator and check rows."""
    return LinearCode(
        n=7,
        k=4,
        generators=("1010101", "0110011", "0001111", "1111111"),
        parity_checks=("1010101", "0110011", "0001111"),
    )


def repetition_code(r: int) -> LinearCode:
    """[r, 1, r] repetition code (r odd for unambiguous majority decoding)."""
    if r < 1:
        raise ValueError("repetition length must be >= 1")
    checks = tuple(
        "".join("1" if i in (j, j + 1) else "0" for i in range(r))
        for j in range(r - 1)
    )
    return LinearCode(n=r, k=1, generators=("1" * r,), parity_checks=checks)


# ---------------------------------------------------------------------------
# Shannon-theorem demonstration on the binary symmetric channel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchemeResult:
    scheme: str
    rate: float
    success_prob: float
    trials: int
    seed: int


def shannon_demo(
    n_rep: int, p: float, trials: int, seed: int
) -> list[SchemeResult]:
    """Monte Carlo block-success probabilities over the BSC.

    Schemes: r-fold repetition per bit for each odd r <= n_rep (majority
    decoding), and one [7,4] Hamming block (syndrome-table decoding).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("flip probability outside [0, 1]")
    rng = np.random.default_rng(seed)
    results = []
    for r in range(1, n_rep + 1, 2):
        flips = rng.random((trials, r)) < p
        wrong = flips.sum(axis=1) > r // 2
        results.append(
            SchemeResult(f"rep-{r}", 1.0 / r, 1.0 - float(wrong.mean()), trials, seed)
        )
    code = hamming_7_4()
    h_rows = np.array(
        [[int(ch) for ch in row] for row in code.parity_checks], dtype=np.uint8
    )
    leaders = np.zeros(1 << (code.n - code.k), dtype=np.uint8)
    for synd, err in code.syndrome_table.items():
        leaders[int(synd, 2)] = _word_to_int(err)
    flips = (rng.random((trials, code.n)) < p).astype(np.uint8)
    synd_idx = np.zeros(trials, dtype=np.int64)
    for row in h_rows:
        synd_idx = (synd_idx << 1) | (flips @ row) % 2
    error_ints = np.packbits(flips, axis=1, bitorder="little")[:, 0]
    residual = error_ints ^ leaders[synd_idx]
    success = float((residual == 0).mean())
    results.append(
        SchemeResult("hamming74", code.k / code.n, success, trials, seed)
    )
    return results

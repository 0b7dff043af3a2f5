from dataclasses import dataclass

from scipy.special import comb

from fourierlcu.libs.utils.errors import DecompositionError

MAX_SECTOR_QUBITS = 64


def two_j_of(j: float) -> int:
    """Doubled spin quantum number, validated to be a non-negative half-integer."""
    two_j = int(round(2 * float(j)))
    if abs(2 * float(j) - two_j) > 1e-9 or two_j < 0:
        raise DecompositionError(f"{j} is not a non-negative half-integer")
    return two_j


@dataclass(frozen=True)
class SpinSectors:
    """Total-spin decomposition of n qubits.

    Spins are kept doubled (``two_js``) so half-integers stay exact.
    """

    n: int
    two_js: tuple[int, ...]
    mults: tuple[int, ...]

    @property
    def js(self) -> tuple[float, ...]:
        return tuple(t / 2 for t in self.two_js)

    @property
    def j_min(self) -> float:
        return self.two_js[-1] / 2

    def multiplicity(self, j: float) -> int:
        return dict(zip(self.two_js, self.mults))[two_j_of(j)]

    def dimension_total(self) -> int:
        return sum((t + 1) * m for t, m in zip(self.two_js, self.mults))

    def cost_bound(self) -> int:
        """sum_j (2j+1)^2 = (n+1)(n+2)(n+3)/6, the bound on the SU(2) LCU cost."""
        return sum((t + 1) ** 2 for t in self.two_js)


def spin_sectors(n: int) -> SpinSectors:
    if not 1 <= n <= MAX_SECTOR_QUBITS:
        raise DecompositionError(f"Spin sectors supported for 1..{MAX_SECTOR_QUBITS} qubits, got {n}")
    two_js = tuple(range(n, -1, -2))
    mults = tuple(
        int(comb(n, (n - t) // 2, exact=True)) - int(comb(n, (n - t) // 2 - 1, exact=True))
        for t in two_js
    )
    return SpinSectors(n=n, two_js=two_js, mults=mults)

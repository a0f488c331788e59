"""Closed-form information utilization ratios and the event ledger.

Each calculator returns an :class:`IurReport` with the utilized bits
(numerator), acquired bits (denominator) and their ratio. Ratios are exact
where an exact count of the consumed bits exists (MC, LJ, the two evolution
strategies, DE/rand variants); for the swarm and pbest algorithms only an
interval is known, reported as ``[ratio, ratio_upper]``.

The ledger prices :mod:`iurlab.core` decision events one by one, so a
ratio can also be computed from the events an actual run emitted and
cross-checked against the closed forms.
"""

import json
import math
from dataclasses import dataclass, asdict
from typing import NamedTuple

from iurlab import core
from iurlab.entropy import log2_binomial, log2_falling_factorial, pi, sum_pi

DE_VARIANTS = ("rand/1", "rand/2", "best/1", "best/2", "current-to-best/1")
_DE_RAND = ("rand/1", "rand/2")


class LedgerEntry(NamedTuple):
    """One priced decision event; ``exact`` is False for upper-bound prices."""

    event: object
    bits: float
    exact: bool


@dataclass(frozen=True)
class IurReport:
    """Utilized-over-acquired information accounting for one algorithm.

    ``ratio_upper == ratio`` when the formula is exact; otherwise the pair
    brackets the true ratio. ``numerator_bits`` is the exactly-priced part,
    so ``ratio == numerator_bits / denominator_bits`` always holds.
    """

    algorithm: str
    numerator_bits: float
    denominator_bits: float
    ratio: float
    ratio_upper: float
    exact: bool
    g: int | None = None
    lam: int | None = None
    mu: int | None = None
    s: int | None = None
    p: float | None = None
    H_bits: float | None = None

    def __post_init__(self):
        if self.denominator_bits <= 0:
            raise ValueError("denominator must be positive")
        if self.numerator_bits < 0:
            raise ValueError("numerator must be non-negative")
        if self.ratio_upper < self.ratio - 1e-15:
            raise ValueError("upper bound below lower bound")

    def to_json(self) -> str:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return json.dumps(d, sort_keys=True)


def _report(algorithm, num, den, upper_num=None, exact=True, **params):
    upper_num = num if upper_num is None else upper_num
    return IurReport(
        algorithm=algorithm,
        numerator_bits=num,
        denominator_bits=den,
        ratio=num / den,
        ratio_upper=upper_num / den,
        exact=exact,
        **params,
    )


def _check_gh(g, H):
    if g < 1:
        raise ValueError(f"need g >= 1, got {g}")
    if H <= 0:
        raise ValueError(f"need positive codomain bits, got {H}")


# --- event pricing ----------------------------------------------------------


def price_event(event) -> tuple[float, bool]:
    """Bits consumed by one decision event and whether the price is exact
    (True) or an upper bound (False)."""
    if isinstance(event, core.CompareWithBest):
        if event.history_length < 1:
            raise ValueError("history_length must be >= 1")
        return pi(event.history_length), True
    if isinstance(event, core.TopMuOfLambda):
        _validate_mu_lambda(event.lam, event.mu)
        return log2_binomial(event.lam, event.mu), True
    if isinstance(event, core.RankedTopMuOfLambda):
        _validate_mu_lambda(event.lam, event.mu)
        return log2_falling_factorial(event.lam, event.mu), True
    if isinstance(event, core.RingBestOfThree):
        return math.log2(3.0), False
    if isinstance(event, core.GlobalBestOfSwarm):
        if event.swarm_size < 1:
            raise ValueError("swarm_size must be >= 1")
        return math.log2(event.swarm_size), False
    if isinstance(event, core.PbestMembership):
        if not 0.0 < event.p <= 1.0:
            raise ValueError("need 0 < p <= 1")
        if event.swarm_size < 1:
            raise ValueError("swarm_size must be >= 1")
        return log2_binomial(event.swarm_size, math.ceil(event.p * event.swarm_size)), False
    raise TypeError(f"unknown decision event {event!r}")


def ledger_entries(events) -> list[LedgerEntry]:
    """Price each decision event by the pricing table."""
    return [LedgerEntry(event, *price_event(event)) for event in events]


def ledger_total(events, total_evals: int, H: float, algorithm="ledger") -> IurReport:
    """Price a run's event stream: numerator = sum of event prices,
    denominator = total_evals * H.

    Upper-bound event prices widen ``ratio_upper`` only; the exact prices
    form the numerator, so exact-only streams yield exact reports.
    """
    if total_evals < 1:
        raise ValueError("total_evals must be >= 1")
    _check_gh(1, H)
    exact_bits = 0.0
    bound_bits = 0.0
    all_exact = True
    for entry in ledger_entries(events):
        if entry.exact:
            exact_bits += entry.bits
        else:
            bound_bits += entry.bits
            all_exact = False
    den = total_evals * H
    return _report(
        algorithm, exact_bits, den, upper_num=exact_bits + bound_bits,
        exact=all_exact, H_bits=H,
    )


# --- closed forms -----------------------------------------------------------


def iur_mc(H: float = core.DEFAULT_CODOMAIN_BITS, g: int = 1) -> IurReport:
    """Pure random sampling consumes nothing: the ratio is exactly zero."""
    _check_gh(g, H)
    return _report("mc", 0.0, g * H, g=g, H_bits=H)


def iur_lj(g: int, H: float) -> IurReport:
    """One comparison against the incumbent per generation:
    sum_{i=1}^{g-1} pi(i) / (g H)."""
    _check_gh(g, H)
    return _report("lj", sum_pi(g - 1), g * H, g=g, H_bits=H)


def _validate_mu_lambda(lam, mu):
    if not 0 <= mu <= lam or lam < 1:
        raise ValueError(f"need 0 <= mu <= lambda, got lambda={lam}, mu={mu}")


def iur_es(g: int, lam: int, mu: int, H: float) -> IurReport:
    """Unranked top-mu selection: (g-1) log2 C(lambda, mu) / (g lambda H)."""
    _check_gh(g, H)
    _validate_mu_lambda(lam, mu)
    num = (g - 1) * log2_binomial(lam, mu)
    return _report("es", num, g * lam * H, g=g, lam=lam, mu=mu, H_bits=H)


def iur_cmaes(g: int, lam: int, mu: int, H: float) -> IurReport:
    """Ranked top-mu selection: (g-1) log2(lambda!/(lambda-mu)!) / (g lambda H)."""
    _check_gh(g, H)
    _validate_mu_lambda(lam, mu)
    num = (g - 1) * log2_falling_factorial(lam, mu)
    return _report("cmaes", num, g * lam * H, g=g, lam=lam, mu=mu, H_bits=H)


def _check_swarm(s):
    if s < 1:
        raise ValueError(f"need swarm size >= 1, got {s}")


def iur_pso_bounds(g: int, s: int, H: float) -> IurReport:
    """Per-particle incumbent comparisons plus the swarm-best identity:
    interval [s sum pi / (s g H), (that) + (g-1) log2 s / (s g H)]."""
    _check_gh(g, H)
    _check_swarm(s)
    num = s * sum_pi(g - 1)
    upper = num + (g - 1) * math.log2(s)
    return _report("pso", num, s * g * H, upper_num=upper, exact=False,
                   g=g, s=s, H_bits=H)


def iur_spso_bounds(g: int, s: int, H: float) -> IurReport:
    """Ring-topology variant: the upper bound pays log2(3) per particle
    per generation for the ring-best choice."""
    _check_gh(g, H)
    _check_swarm(s)
    num = s * sum_pi(g - 1)
    upper = num + s * (g - 1) * math.log2(3.0)
    return _report("spso", num, s * g * H, upper_num=upper, exact=False,
                   g=g, s=s, H_bits=H)


def iur_de(g: int, s: int, H: float, variant: str = "rand/1") -> IurReport:
    """DE selection comparisons; rand-type variants are exact and equal the
    LJ ratio at the same g, best-type variants inherit the PSO interval."""
    if variant not in DE_VARIANTS:
        raise ValueError(f"unknown DE variant {variant!r}")
    _check_gh(g, H)
    _check_swarm(s)
    num = s * sum_pi(g - 1)
    den = s * g * H
    if variant in _DE_RAND:
        return _report(f"de/{variant}", num, den, g=g, s=s, H_bits=H)
    upper = num + (g - 1) * math.log2(s)
    return _report(f"de/{variant}", num, den, upper_num=upper, exact=False,
                   g=g, s=s, H_bits=H)


def iur_jade_bounds(g: int, s: int, p: float, H: float) -> IurReport:
    """DE/current-to-pbest: the upper bound adds the pbest-membership cost
    log2 C(s, ceil(p s)) per generation."""
    _check_gh(g, H)
    _check_swarm(s)
    if not 0.0 < p <= 1.0:
        raise ValueError(f"need 0 < p <= 1, got {p}")
    num = s * sum_pi(g - 1)
    upper = num + (g - 1) * log2_binomial(s, math.ceil(p * s))
    return _report("jade", num, s * g * H, upper_num=upper, exact=False,
                   g=g, s=s, p=p, H_bits=H)


def comparison_upper_bound(m: int, H: float) -> float:
    """Ceiling for any comparison-based algorithm with at most m
    evaluations: log2(m) / H."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    _check_gh(1, H)
    return math.log2(m) / H

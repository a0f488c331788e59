"""Evolution strategies: comma-selected (mu, lambda)-ES with log-normal
step-size self-adaptation, and covariance matrix adaptation.

The selection of each generation's parents is the information-consuming
decision: the plain strategy uses only which mu offspring were best
(TopMuOfLambda); covariance adaptation also uses their ranking for the
recombination weights (RankedTopMuOfLambda).
"""

import math

import numpy as np

from iurlab.core import RankedTopMuOfLambda, TopMuOfLambda
from iurlab.algorithms.base import ConfigError, Optimizer, register


def default_lambda(dim: int) -> int:
    return 4 + int(3 * math.log(dim))


@register("es")
class EvolutionStrategy(Optimizer):
    """(mu, lambda)-ES: intermediate recombination of the best mu, one
    self-adapted scalar step size per individual."""

    def __init__(self, config, problem, seed):
        super().__init__(config, problem, seed)
        if config.lam is None:
            raise ConfigError("es requires lambda")
        self.lam = config.lam
        self.mu = config.mu if config.mu is not None else max(1, config.lam // 2)
        if not 1 <= self.mu <= self.lam:
            raise ConfigError(f"need 1 <= mu <= lambda, got {self.mu}, {self.lam}")
        self.batch = self.lam

    def initialize(self):
        sigma0 = self.config.initial_sigma
        if sigma0 is None:
            sigma0 = 0.5 * float(np.mean(self.space.width())) / 2.0
        self.X = self.uniform_points(self.lam)
        self.sigmas = np.full(self.lam, sigma0)
        self.values = self.evaluate(self.X)

    def step(self):
        order = np.argsort(self.values, kind="stable")[: self.mu]
        xbar = self.X[order].mean(axis=0)
        sbar = float(self.sigmas[order].mean())
        sigma_noise = np.asarray(self.rng.normals(self.lam))
        position_noise = np.asarray(self.rng.normals(self.lam * self.dim)).reshape(
            self.lam, self.dim
        )
        self.sigmas = sbar * np.exp(self.config.delta_sigma * sigma_noise)
        self.X = self.clamp(xbar + self.sigmas[:, None] * position_noise)
        self.values = self.evaluate(self.X)
        return (TopMuOfLambda(self.lam, self.mu),)


@register("cmaes")
class CmaEs(Optimizer):
    """Covariance matrix adaptation ES with rank-mu update, positive
    log-linear recombination weights over the best mu, cumulative step-size
    adaptation, and no restarts."""

    def __init__(self, config, problem, seed):
        super().__init__(config, problem, seed)
        self.lam = config.lam if config.lam is not None else default_lambda(self.dim)
        self.mu = config.mu if config.mu is not None else self.lam // 2
        if not 1 <= self.mu <= self.lam:
            raise ConfigError(f"need 1 <= mu <= lambda, got {self.mu}, {self.lam}")
        self.batch = self.lam

        d, mu = self.dim, self.mu
        w = np.log(mu + 0.5) - np.log(np.arange(1, mu + 1))
        self.weights = w / w.sum()
        self.mueff = 1.0 / np.sum(self.weights**2)
        self.c_sigma = (self.mueff + 2.0) / (d + self.mueff + 5.0)
        self.d_sigma = (
            1.0
            + 2.0 * max(0.0, math.sqrt((self.mueff - 1.0) / (d + 1.0)) - 1.0)
            + self.c_sigma
        )
        self.c_c = (4.0 + self.mueff / d) / (d + 4.0 + 2.0 * self.mueff / d)
        self.c_1 = 2.0 / ((d + 1.3) ** 2 + self.mueff)
        self.c_mu = min(
            1.0 - self.c_1,
            2.0 * (self.mueff - 2.0 + 1.0 / self.mueff) / ((d + 2.0) ** 2 + self.mueff),
        )
        self.chi_d = math.sqrt(d) * (1.0 - 1.0 / (4.0 * d) + 1.0 / (21.0 * d * d))

    def initialize(self):
        sigma0 = self.config.initial_sigma
        if sigma0 is None:
            sigma0 = 0.5 * float(np.mean(self.space.width())) / 2.0
        self.mean = self.uniform_points(1)[0]
        self.sigma = sigma0
        self.C = np.eye(self.dim)
        self.p_sigma = np.zeros(self.dim)
        self.p_c = np.zeros(self.dim)
        self._decompose()
        self._sample()

    def _decompose(self):
        # Repair tiny negative/zero eigenvalues so C stays positive definite.
        eigvals, B = np.linalg.eigh(self.C)
        floor = 1e-14 * max(float(eigvals[-1]), 1e-300)
        if eigvals[0] < floor:
            eigvals = np.maximum(eigvals, floor)
            self.C = (B * eigvals) @ B.T
            self.C = (self.C + self.C.T) / 2.0
        self.B = B
        self.D = np.sqrt(eigvals)

    def _sample(self):
        Z = np.asarray(self.rng.normals(self.lam * self.dim)).reshape(self.lam, self.dim)
        self.X = self.clamp(self.mean + self.sigma * (Z * self.D) @ self.B.T)
        self.values = self.evaluate(self.X)

    def step(self):
        order = np.argsort(self.values, kind="stable")[: self.mu]
        selected = self.X[order]

        old_mean = self.mean
        self.mean = self.weights @ selected
        y_w = (self.mean - old_mean) / max(self.sigma, 1e-250)

        inv_sqrt = self.B @ ((self.B / self.D).T)  # C^{-1/2}
        self.p_sigma = (1.0 - self.c_sigma) * self.p_sigma + math.sqrt(
            self.c_sigma * (2.0 - self.c_sigma) * self.mueff
        ) * (inv_sqrt @ y_w)
        ps_norm = float(np.linalg.norm(self.p_sigma))
        gens = max(self.generation - 1, 1)
        hsig = ps_norm / math.sqrt(
            1.0 - (1.0 - self.c_sigma) ** (2.0 * gens)
        ) / self.chi_d < 1.4 + 2.0 / (self.dim + 1.0)

        self.p_c = (1.0 - self.c_c) * self.p_c + hsig * math.sqrt(
            self.c_c * (2.0 - self.c_c) * self.mueff
        ) * y_w

        art = (selected - old_mean) / max(self.sigma, 1e-250)
        rank_mu = (self.weights[:, None] * art).T @ art
        self.C = (
            (1.0 - self.c_1 - self.c_mu) * self.C
            + self.c_1
            * (
                np.outer(self.p_c, self.p_c)
                + (0.0 if hsig else self.c_c * (2.0 - self.c_c)) * self.C
            )
            + self.c_mu * rank_mu
        )
        self.C = (self.C + self.C.T) / 2.0
        self.sigma = self.sigma * math.exp(
            (self.c_sigma / self.d_sigma) * (ps_norm / self.chi_d - 1.0)
        )
        self.sigma = max(self.sigma, 1e-250)

        self._decompose()
        self._sample()
        return (RankedTopMuOfLambda(self.lam, self.mu),)

"""Differential evolution: the classic variants and the adaptive
pbest/archive development.

Selection is greedy per slot (a trial replaces its parent only on a strict
improvement), so each slot performs one incumbent comparison per generation.
Best-type mutation additionally consumes the population-best identity, and
the pbest mutation the membership of the top-100p% set.
"""

import math

import numpy as np

from iurlab.core import CompareWithBest, GlobalBestOfSwarm, PbestMembership
from iurlab.algorithms.base import Optimizer, register


class _DeBase(Optimizer):
    def __init__(self, config, problem, seed):
        super().__init__(config, problem, seed)
        self.s = config.s
        self.batch = self.s

    def initialize(self):
        self.X = self.uniform_points(self.s)
        self.values = self.evaluate(self.X)

    def _distinct_indices(self, count, taboo):
        """Draw `count` distinct population indices avoiding `taboo`."""
        chosen = []
        while len(chosen) < count:
            r = self.rng.index(self.s)
            if r not in taboo and r not in chosen:
                chosen.append(r)
        return chosen

    def _crossover(self, target, mutant):
        mask = np.asarray(self.rng.uniforms(self.dim)) < self.config.CR
        mask[self.rng.index(self.dim)] = True  # forced mutant coordinate
        return np.where(mask, mutant, target)

    def _select(self, trials):
        trial_values = self.evaluate(trials)
        improved = trial_values < self.values
        self.X[improved] = trials[improved]
        self.values[improved] = trial_values[improved]
        return improved


@register("de")
class DifferentialEvolution(_DeBase):
    """rand/best difference mutation with binomial crossover."""

    def step(self):
        variant = self.config.de_variant
        F = self.config.F
        X = self.X
        best = X[int(np.argmin(self.values))]
        trials = np.empty_like(X)
        for i in range(self.s):
            if variant == "rand/1":
                r1, r2, r3 = self._distinct_indices(3, (i,))
                mutant = X[r1] + F * (X[r2] - X[r3])
            elif variant == "rand/2":
                r1, r2, r3, r4, r5 = self._distinct_indices(5, (i,))
                mutant = X[r1] + F * (X[r2] - X[r3]) + F * (X[r4] - X[r5])
            elif variant == "best/1":
                r1, r2 = self._distinct_indices(2, (i,))
                mutant = best + F * (X[r1] - X[r2])
            elif variant == "best/2":
                r1, r2, r3, r4 = self._distinct_indices(4, (i,))
                mutant = best + F * (X[r1] - X[r2]) + F * (X[r3] - X[r4])
            else:  # current-to-best/1
                r1, r2 = self._distinct_indices(2, (i,))
                mutant = X[i] + F * (best - X[i]) + F * (X[r1] - X[r2])
            trials[i] = self._crossover(X[i], mutant)
        self._select(self.clamp(trials))
        compare = CompareWithBest(self.generation - 1)
        events = (compare,) * self.s
        if variant in ("best/1", "best/2", "current-to-best/1"):
            events += (GlobalBestOfSwarm(self.s),)
        return events


@register("jade")
class Jade(_DeBase):
    """current-to-pbest/1 with external archive and adaptive (F, CR)."""

    def initialize(self):
        super().initialize()
        self.archive = []
        self.mu_F = 0.5
        self.mu_CR = 0.5
        # ceil(p s) >= 1 must hold; raise p to the smallest usable fraction.
        self.p = max(self.config.p, 1.0 / self.s)

    def _draw_F(self):
        # Cauchy(mu_F, 0.1), redrawn while non-positive, truncated at 1.
        while True:
            f = self.mu_F + 0.1 * math.tan(math.pi * (self.rng.uniform() - 0.5))
            if f > 0.0:
                return min(f, 1.0)

    def _draw_CR(self):
        return min(1.0, max(0.0, self.mu_CR + 0.1 * self.rng.normal()))

    def step(self):
        X = self.X
        k = math.ceil(self.p * self.s)
        top = np.argsort(self.values, kind="stable")[:k]
        trials = np.empty_like(X)
        Fs = np.empty(self.s)
        CRs = np.empty(self.s)
        for i in range(self.s):
            Fs[i] = self._draw_F()
            CRs[i] = self._draw_CR()
            xp = X[top[self.rng.index(k)]]
            r1 = self._distinct_indices(1, (i,))[0]
            pool = self.s + len(self.archive)
            while True:
                r2 = self.rng.index(pool)
                if r2 != i and r2 != r1:
                    break
            donor = X[r2] if r2 < self.s else self.archive[r2 - self.s]
            mutant = X[i] + Fs[i] * (xp - X[i]) + Fs[i] * (X[r1] - donor)
            mask = np.asarray(self.rng.uniforms(self.dim)) < CRs[i]
            mask[self.rng.index(self.dim)] = True
            trials[i] = np.where(mask, mutant, X[i])
        parents = X.copy()
        improved = self._select(self.clamp(trials))
        winners = np.flatnonzero(improved)
        for i in winners:
            self.archive.append(parents[i])
        while len(self.archive) > self.s:
            self.archive.pop(self.rng.index(len(self.archive)))
        if winners.size:
            sf = Fs[winners]
            c = self.config.c
            self.mu_F = (1.0 - c) * self.mu_F + c * float(np.sum(sf**2) / np.sum(sf))
            self.mu_CR = (1.0 - c) * self.mu_CR + c * float(np.mean(CRs[winners]))
        compare = CompareWithBest(self.generation - 1)
        return (compare,) * self.s + (PbestMembership(self.p, self.s),)

"""Populations with independent, non-identical defect probabilities.

A population is described by a vector of per-item defect probabilities
``p_i``, each strictly inside ``(0, 1/2)``.  Ground-truth defect status is
drawn per item as an independent Bernoulli(``p_i``).  Randomness uses
numpy's PCG64 generator; reproducible sub-streams are derived with
``numpy.random.SeedSequence`` spawn keys (one child stream per trial).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ConfigError

# Entries equal to zero are clamped up so code lengths stay finite;
# entries at or above 1/2 are rejected (pooling offers no advantage there).
PROB_FLOOR = 1e-12
PROB_CEIL = 0.5

_MAX_REDRAWS = 10_000


@dataclass(frozen=True, eq=False)
class PriorVector:
    """Ordered per-item defect probabilities, all strictly in (0, 1/2)."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.probs, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 1:
            raise ConfigError("prior needs at least one probability")
        if not ((arr > 0.0) & (arr < PROB_CEIL)).all():
            raise ConfigError("all probabilities must lie strictly in (0, 0.5)")
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    def __len__(self) -> int:
        return self.probs.size

    def __getitem__(self, i: int) -> float:
        return float(self.probs[i])

    @cached_property
    def mu(self) -> float:
        """Expected number of defective items, sum of all p_i."""
        return float(self.probs.sum())

    @cached_property
    def entropy_bits(self) -> float:
        return entropy(self.probs)

    @property
    def is_iid(self) -> bool:
        return bool((self.probs == self.probs[0]).all())


@dataclass(frozen=True, eq=False)
class InfectionVector:
    """Hidden ground-truth defect flags.

    Only the test oracle and end-of-run verification may read this;
    the testing algorithms themselves never see it.
    """

    status: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.status, dtype=np.int8)
        if not np.isin(arr, (0, 1)).all():
            raise ConfigError("infection status entries must be 0 or 1")
        arr.setflags(write=False)
        object.__setattr__(self, "status", arr)

    def __len__(self) -> int:
        return self.status.size

    @property
    def defective_count(self) -> int:
        return int(self.status.sum())


def entropy(probs) -> float:
    """Joint entropy in bits of independent Bernoulli items.

    Accepts probabilities anywhere in (0, 1); endpoints contribute zero
    by the usual 0*log(0) = 0 convention.
    """
    p = np.asarray(probs, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = -(np.where(p > 0.0, p * np.log2(p), 0.0)
                  + np.where(p < 1.0, (1.0 - p) * np.log2(1.0 - p), 0.0))
    return float(terms.sum())


@dataclass(frozen=True)
class PriorSpec:
    """Recipe for generating a PriorVector.

    Families:
      - ``iid``: every item gets the same probability ``p``.
      - ``dirichlet``: a flat Dirichlet draw of length ``size`` (entries sum
        to one) scaled by ``scale``; entries >= 1/2 are redrawn from the
        scaled marginal.
      - ``truncated_exponential``: i.i.d. exponential with the given
        ``rate``; draws >= 1/2 are redrawn.
    """

    family: str
    size: int
    p: float | None = None
    scale: float | None = None
    rate: float | None = None
    seed: int = 0

    _FAMILIES = ("iid", "dirichlet", "truncated_exponential")

    def __post_init__(self) -> None:
        if self.family not in self._FAMILIES:
            raise ConfigError(f"unknown prior family {self.family!r}")
        if self.size < 1:
            raise ConfigError("population size must be >= 1")
        if self.family == "iid":
            if self.p is None or not (0.0 < self.p < PROB_CEIL):
                raise ConfigError("iid prior needs p in (0, 0.5)")
        elif self.family == "dirichlet":
            if self.scale is None or self.scale <= 0.0:
                raise ConfigError("dirichlet prior needs scale > 0")
        else:
            if self.rate is None or self.rate <= 0.0:
                raise ConfigError("truncated_exponential prior needs rate > 0")

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "PriorSpec":
        """Parse compact specs like ``iid(p=0.1,size=20)``."""
        m = re.fullmatch(r"\s*(\w+)\s*\(([^()]*)\)\s*", text)
        if not m:
            raise ConfigError(f"cannot parse prior spec {text!r}")
        family = m.group(1)
        kwargs: dict[str, float] = {}
        for part in m.group(2).split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise ConfigError(f"expected key=value in prior spec, got {part!r}")
            key, value = (s.strip() for s in part.split("=", 1))
            kwargs[key] = float(value)
        size = int(kwargs.pop("size", 0))
        try:
            return cls(family=family, size=size, seed=seed, **kwargs)
        except TypeError as exc:
            raise ConfigError(f"bad parameters for {family!r}: {exc}") from exc


def generate_prior(spec: PriorSpec, rng: np.random.Generator | None = None) -> PriorVector:
    """Draw a PriorVector; a pure function of (spec, rng seed)."""
    if rng is None:
        rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    if spec.family == "iid":
        values = np.full(spec.size, spec.p, dtype=np.float64)
    elif spec.family == "dirichlet":
        values = rng.dirichlet(np.ones(spec.size)) * spec.scale
        values = _redraw_out_of_range(
            values,
            lambda n: (rng.beta(1.0, spec.size - 1.0, size=n) if spec.size > 1
                       else np.ones(n)) * spec.scale,
        )
    else:
        mean = 1.0 / spec.rate
        values = rng.exponential(mean, size=spec.size)
        values = _redraw_out_of_range(values, lambda n: rng.exponential(mean, size=n))
    return PriorVector(np.maximum(values, PROB_FLOOR))


def _redraw_out_of_range(values: np.ndarray, draw) -> np.ndarray:
    """Redraw individual entries >= 1/2 until all are inside the domain."""
    for _ in range(_MAX_REDRAWS):
        bad = values >= PROB_CEIL
        n_bad = int(bad.sum())
        if n_bad == 0:
            return values
        values[bad] = draw(n_bad)
    raise ConfigError("prior parameters make redraws below 1/2 hopeless")


def sample_infections(prior: PriorVector,
                      seed: int | np.random.Generator) -> InfectionVector:
    """Independent Bernoulli(p_i) draw of the ground truth; seed-deterministic."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    flags = rng.random(len(prior)) < prior.probs
    return InfectionVector(flags.astype(np.int8))

import math

from scipy import special

from .. import base as mt_base
from . import base


__all__ = ['Erlang', 'erlang_cdf']


def erlang_cdf(t: float, alpha: int, rate: float) -> float:
    """Cumulative distribution function of the Erlang law.

    This is the probability that a sum of `alpha` exponential variables with rate `rate` is lower
    than `t`. It is computed through the regularized lower incomplete gamma function, which is
    exact for integer shapes.

    Parameters:
        t: Non-negative duration.
        alpha: Shape, i.e. the number of exponential phases.
        rate: Rate of each phase.

    Example:

        >>> from mitotrack import proba

        >>> proba.erlang_cdf(0, alpha=3, rate=.5)
        0.0

        >>> round(proba.erlang_cdf(2, alpha=2, rate=1), 5)
        0.59399

    """

    if not math.isfinite(t) or t < 0:
        raise mt_base.DomainError(f'Erlang CDF is defined for finite non-negative t, got {t}')
    if int(alpha) != alpha or alpha < 1:
        raise mt_base.DomainError(f'alpha must be a positive integer, got {alpha}')
    if not rate > 0:
        raise mt_base.DomainError(f'rate must be positive, got {rate}')

    if t == 0:
        return 0.
    return float(special.gammainc(alpha, rate * t))


class Erlang(base.Distribution):
    """Erlang distribution, used as the law of cell cycle durations.

    The parameters can either be given or estimated from observed cycle lengths with the
    method of moments. The variance of an Erlang law is alpha / rate², hence the shape is the
    squared mean divided by the variance, rounded to the nearest positive integer.

    Parameters:
        alpha: Initial shape.
        rate: Initial rate.

    Example:

        >>> from mitotrack import proba

        >>> p = proba.Erlang(alpha=2, rate=1)
        >>> p
        Erlang(α=2, β=1.000)

        >>> round(p.cdf(2), 5)
        0.59399

        >>> for cycle in (90, 100, 110, 100):
        ...     p = p.update(cycle)
        >>> p
        Erlang(α=150, β=1.500)
        >>> p.mean
        100.0

    """

    def __init__(self, alpha: int = 1, rate: float = 1.):
        if int(alpha) != alpha or alpha < 1:
            raise mt_base.DomainError(f'alpha must be a positive integer, got {alpha}')
        if not rate > 0:
            raise mt_base.DomainError(f'rate must be positive, got {rate}')
        self.alpha = int(alpha)
        self.rate = float(rate)
        self._n = 0
        self._mean = 0.
        self._m2 = 0.

    @property
    def n_samples(self):
        return self._n

    @property
    def is_fitted(self) -> bool:
        """Whether the parameters were estimated from observed cycle lengths."""
        return self._n > 1 and self._m2 > 0

    @property
    def mean(self):
        return self.alpha / self.rate

    @property
    def mode(self):
        return (self.alpha - 1) / self.rate

    def __str__(self):
        return f'Erlang(α={self.alpha}, β={self.rate:.3f})'

    def update(self, x):
        """Refits the parameters with one more observed cycle length.

        The parameters are only replaced once the running variance is positive.

        """
        if not x > 0:
            raise mt_base.DomainError(f'cycle lengths must be positive, got {x}')

        # Welford
        self._n += 1
        delta = x - self._mean
        self._mean += delta / self._n
        self._m2 += delta * (x - self._mean)

        if self._n > 1 and self._m2 > 0:
            var = self._m2 / (self._n - 1)
            self.alpha = max(1, round(self._mean ** 2 / var))
            self.rate = self.alpha / self._mean

        return self

    def pdf(self, x):
        if x < 0:
            return 0.
        if x == 0:
            return self.rate if self.alpha == 1 else 0.
        log_pdf = (self.alpha * math.log(self.rate) + (self.alpha - 1) * math.log(x)
                   - self.rate * x - math.lgamma(self.alpha))
        return math.exp(log_pdf)

    def cdf(self, x):
        return erlang_cdf(max(x, 0.), self.alpha, self.rate)

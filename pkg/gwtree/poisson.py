# @package      gwtree
# @file         poisson.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
"""Search cost when every level has Poisson(mu) offspring.

With Poisson offspring the number of surviving children is again Poisson,
so p[l] = 1 - exp(-mu p[l+1]) and the conditional moments needed by the
cost recursions have closed forms:

  E[W | X=0]                   = mu (1 - p[l+1])
  E[W | X>=1]                  = mu (1 + p[l+1] (1 - p[l]) / p[l])
  E[(W-X)/(1+X) | X>=1]        = (1 - p[l+1]) P(2, mu p[l+1]) / (p[l+1] p[l])

where P(2, x) = 1 - (1 + x) e^{-x} is the regularized lower incomplete
gamma function. The module also covers the choice of mu minimizing the
cost, the infinite tree (k -> infinity) and the limit of the optimal mean.
"""

import math
import logging
import collections

import numpy as np
from scipy import optimize
from scipy.special import gammainc, lambertw
from joblib import Parallel, delayed

from .config import GWTreeConfig
from .search import CostTable
from .exceptions import DomainError, ImpossibleSearchError, SubcriticalError

log = logging.getLogger(__name__)

DEFAULT_BRACKET = (0.05, 100.)
DEFAULT_TOL = 1e-4
SCAN_POINTS = 64

# grids of the optimal-mean tables
FIGURE_KS = (4, 8, 16, 32)
FIGURE_K_VALUES = (0.5, 1., 2., 4., 8., 16.)

FIXED_POINT_TOL = 1e-14
FIXED_POINT_MAX_ITERATIONS = 100000

# below SERIES_CUTOFF the dead-end moment uses its Taylor series
SERIES_CUTOFF = 1e-3
EXP_OVERFLOW = 700.

MuOptimum = collections.namedtuple('MuOptimum', ['mu_opt', 'C_opt', 'at_boundary'])
InfiniteTreeResult = collections.namedtuple('InfiniteTreeResult', ['mu', 'K', 'p', 'E', 'C_inf', 'C_long', 'C_p'])


def _check_mu(mu):
    if not (math.isfinite(mu) and mu > 0.):
        raise DomainError("Poisson mean must be positive and finite, got %r" % (mu))


def poisson_survival(mu, k):
    """p[l] for l = 0..k under Poisson(mu) offspring."""
    _check_mu(mu)
    if k < 0:
        raise DomainError("target level must be nonnegative, got %d" % (k))
    p = np.ones(k + 1)
    for l in range(k - 1, -1, -1):
        p[l] = -math.expm1(-mu*p[l + 1])
    return p


def _x_over_expm1(x):
    """x / (e^x - 1), 1 at x = 0."""
    if x == 0.:
        return 1.
    if x > EXP_OVERFLOW:
        return 0.
    return x/math.expm1(x)


def _dead_end_factor(x):
    """P(2, x) / (x (1 - e^{-x})), with its series 1/2 - x/12 + x^3/720 near 0
    where P(2, x) and 1 - e^{-x} both underflow."""
    if x < SERIES_CUTOFF:
        return .5 - x/12. + x**3/720.
    return float(gammainc(2., x))/(-math.expm1(-x)*x)


def poisson_cost(mu, k, K):
    """Cost table from the closed-form Poisson moments.

    Args:
        mu: Poisson mean.
        k: target level.
        K: price per inspected child.

    Returns:
        CostTable (its survival attribute is None)
    """
    _check_mu(mu)
    if not (math.isfinite(K) and K >= 0.):
        raise DomainError("inspection price K must be finite and nonnegative, got %r" % (K))
    p = poisson_survival(mu, k)
    if p[0] == 0.:
        raise ImpossibleSearchError("p[0] underflows to 0 for mu=%g, k=%d; the cost exceeds floating point range" %
                                    (mu, k))

    E = np.zeros(k)
    D = np.ones(k + 1)
    flagged = []
    for l in range(k - 1, -1, -1):
        pNext = p[l + 1]
        x = float(mu*pNext)
        die = math.exp(-x)
        if l == k - 1:
            E[l] = 1.
        elif die == 0.:
            flagged.append(l)
        else:
            E[l] = 1. + (K + E[l + 1])*mu*(1. - pNext)
        givenSuccess = mu + _x_over_expm1(x)
        deadEnds = mu*(1. - pNext)*_dead_end_factor(x)
        nextE = E[l + 1] if l + 1 < k else 0.
        D[l] = math.fsum([1., D[l + 1], K*givenSuccess, nextE*deadEnds])

    if k == 0:
        C = 1.
    else:
        # 1/p[0] may overflow to inf; the cost is then out of range
        C = math.fsum([(1./float(p[0]) - 1.)*E[0], D[0]])
    return CostTable(k, K, p, D, E, float(C), sorted(flagged))


def _cost_or_inf(mu, k, K):
    try:
        C = poisson_cost(mu, k, K).C
    except (ImpossibleSearchError, OverflowError):
        return math.inf
    return C if math.isfinite(C) else math.inf


def optimize_mu(k, K, bracket=DEFAULT_BRACKET, tol=DEFAULT_TOL):
    """Poisson mean minimizing the search cost.

    A 64-point log-spaced scan locates the pocket of the minimum, then a
    golden-section search refines it.

    Returns:
        MuOptimum(mu_opt, C_opt, at_boundary)
    """
    low, high = bracket
    if not 0. < low < high:
        raise DomainError("bracket must satisfy 0 < low < high, got %s" % (bracket,))
    grid = np.geomspace(low, high, SCAN_POINTS)
    costs = np.array([_cost_or_inf(mu, k, K) for mu in grid])
    if not np.any(np.isfinite(costs)):
        raise ImpossibleSearchError("the cost is infinite everywhere in [%g, %g] for k=%d" % (low, high, k))
    best = int(np.argmin(costs))
    if best in (0, SCAN_POINTS - 1):
        log.warning("cost minimum for k=%d, K=%g lies at the bracket edge mu=%g", k, K, grid[best])
        return MuOptimum(float(grid[best]), float(costs[best]), True)

    triple = (grid[best - 1], grid[best], grid[best + 1])
    try:
        result = optimize.minimize_scalar(_cost_or_inf, bracket=triple, args=(k, K), method='golden',
                                          options={'xtol': tol/(2.*grid[best])})
        muOpt = float(result.x)
        cOpt = float(result.fun)
    except ValueError:
        # flat pocket: golden needs a strict bracket
        result = optimize.minimize_scalar(_cost_or_inf, bounds=(triple[0], triple[2]), args=(k, K),
                                          method='bounded', options={'xatol': tol})
        muOpt = float(result.x)
        cOpt = float(result.fun)
    if cOpt > costs[best]:
        muOpt, cOpt = float(grid[best]), float(costs[best])
    log.debug("k=%d K=%g: mu_opt=%.6g C_opt=%.6g", k, K, muOpt, cOpt)
    return MuOptimum(muOpt, cOpt, False)


def infinite_survival(mu):
    """Largest root of p = 1 - exp(-p mu); 0 when mu <= 1."""
    _check_mu(mu)
    if mu <= 1.:
        return 0.
    p = 1.
    for _ in range(FIXED_POINT_MAX_ITERATIONS):
        nextP = -math.expm1(-p*mu)
        step = abs(nextP - p)
        p = nextP
        if step < FIXED_POINT_TOL:
            break
    else:
        log.debug("fixed-point iteration for mu=%g stopped at step %g", mu, step)
    for _ in range(3):
        slope = 1. - mu*math.exp(-mu*p)
        if slope <= 0.:
            break
        p -= (p + math.expm1(-mu*p))/slope
    return p


def infinite_survival_lambert(mu):
    """Closed form 1 + W_0(-mu e^{-mu})/mu of the same root, principal branch."""
    _check_mu(mu)
    if mu <= 1.:
        return 0.
    return 1. + float(lambertw(-mu*math.exp(-mu), 0).real)/mu


def infinite_cost(mu, K):
    """Expected cost of moving from a surviving node to a surviving child in
    the infinite tree, evaluated three equivalent ways."""
    _check_mu(mu)
    if mu <= 1.:
        raise SubcriticalError("the infinite tree needs mu > 1, got %g" % (mu))
    p = infinite_survival(mu)
    q = 1. - p
    E = (1. + K*mu*q)/(1. - mu*q)
    givenSuccess = (mu - mu*q*q)/p
    deadEnds = (q - mu*q*q)/p
    cLong = 1. + K*givenSuccess + E*deadEnds
    cInf = (K*mu + 1.)/p
    cP = (-K*math.log1p(-p) + p)/(p*p)
    return InfiniteTreeResult(mu, K, p, E, cInf, cLong, cP)


def infinite_mu_opt(K):
    """Optimal mean of the infinite tree for a finite price K, found by
    minimizing (-K log(1-p) + p)/p^2 over p."""
    if not (math.isfinite(K) and K >= 0.):
        raise DomainError("inspection price K must be finite and nonnegative, got %r" % (K))

    def cost(p):
        return (-K*math.log1p(-p) + p)/(p*p)

    result = optimize.minimize_scalar(cost, bounds=(1e-9, 1. - 1e-12), method='bounded',
                                      options={'xatol': 1e-12})
    p = float(result.x)
    return MuOptimum(-math.log1p(-p)/p, float(result.fun), False)


def lambert_w_minus1(x):
    """Lower real branch of the Lambert W function, x in [-1/e, 0).

    Halley iteration from a branch-point series near -1/e and from the
    asymptotic guess L1 - L2 + L2/L1 elsewhere.
    """
    branchPoint = -math.exp(-1.)
    if not math.isfinite(x) or x >= 0. or x < branchPoint*(1. + 1e-15):
        raise DomainError("W_-1 is defined on [-1/e, 0), got %r" % (x))
    if x <= branchPoint:
        return -1.
    if x < -0.25:
        s = math.sqrt(max(0., 2.*(1. + math.e*x)))
        if s == 0.:
            return -1.
        w = -1. - s - s*s/3.
    else:
        L1 = math.log(-x)
        L2 = math.log(-L1)
        w = L1 - L2 + L2/L1
    for _ in range(100):
        ew = math.exp(w)
        f = w*ew - x
        if f == 0.:
            break
        wPlus = w + 1.
        step = f/(ew*wPlus - (w + 2.)*f/(2.*wPlus))
        w -= step
        if abs(step) <= 1e-15*abs(w):
            break
    return w


def mu_opt_limit():
    """Optimal mean as k and then K tend to infinity (about 1.756)."""
    a = .5 + lambert_w_minus1(-1./(2.*math.sqrt(math.e)))
    return a/math.expm1(a)


class PoissonCostCurve:
    """Cost against mu for fixed k and K, with the large- and small-mu
    asymptotes k K mu and mu^-k. Points whose cost is out of range are None."""

    def __init__(self, k, K, points, mu_opt, C_opt, at_boundary=False):
        self.k = k
        self.K = K
        self.points = list(points)
        self.mu_opt = mu_opt
        self.C_opt = C_opt
        self.at_boundary = at_boundary

    def asym_large(self, mu):
        return self.k*self.K*mu

    def asym_small(self, mu):
        try:
            return mu**(-self.k)
        except OverflowError:
            return math.inf

    def rows(self):
        return [(mu, C, self.asym_large(mu), self.asym_small(mu)) for mu, C in self.points]


def _curve_point(mu, k, K):
    C = _cost_or_inf(mu, k, K)
    if math.isinf(C):
        log.debug("no cost for mu=%g, k=%d", mu, k)
        return None
    return C


def cost_curve(k, K, mu_grid, tol=DEFAULT_TOL):
    """Cost at every grid point plus the refined optimum over the grid range."""
    mu_grid = [float(mu) for mu in mu_grid]
    if not mu_grid or min(mu_grid) <= 0.:
        raise DomainError("mu grid must be nonempty and positive")
    costs = Parallel(n_jobs=GWTreeConfig.get_n_jobs())(delayed(_curve_point)(mu, k, K) for mu in mu_grid)
    low, high = min(mu_grid), max(mu_grid)
    if low < high:
        optimum = optimize_mu(k, K, bracket=(low, high), tol=tol)
    else:
        optimum = MuOptimum(low, costs[0], True)
    return PoissonCostCurve(k, K, zip(mu_grid, costs), optimum.mu_opt, optimum.C_opt, optimum.at_boundary)


def optimum_table(ks=FIGURE_KS, Ks=FIGURE_K_VALUES, bracket=DEFAULT_BRACKET, tol=DEFAULT_TOL):
    """Optimal mean for every (k, K) pair.

    Returns:
        list of (k, K, mu_opt, C_opt, at_boundary), k varying slowest.
    """
    pairs = [(int(k), float(K)) for k in ks for K in Ks]
    optima = Parallel(n_jobs=GWTreeConfig.get_n_jobs())(delayed(optimize_mu)(k, K, bracket, tol) for k, K in pairs)
    return [(k, K) + tuple(optimum) for (k, K), optimum in zip(pairs, optima)]

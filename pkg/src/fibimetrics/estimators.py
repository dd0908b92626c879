"""scikit-learn compatible wrappers around the curation, indicator, binning
and smoothing routines, so they slot into ``Pipeline`` and parameter
search like any other estimator."""

from __future__ import annotations

import numpy as np
from joblib import Parallel, delayed
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .cohort.smoothing import DEFAULT_FRACTION, lowess
from .cohort.stats import FIB_BIN_LABELS, fib_bin, fib_bin_index
from .fibcore import DEFAULT_TOLERANCE, build_credit_table
from .indicators import INDICATOR_KEYS, IndicatorSet, indicator_set
from .records.curation import DEFAULT_WINDOW, curate
from .records.names import DEFAULT_THRESHOLD
from .validation import (
    check_fraction,
    check_positive_int,
    check_profiles,
    check_unit_interval,
    check_window,
)


class ProfileCurator(TransformerMixin, BaseEstimator):
    """Curate raw author profiles.

    Parameters
    ----------
    window : tuple of int, default=(1991, 2024)
        Inclusive publication-year window.
    position_threshold : float, default=0.8
        Minimum name-match score for locating the author in a byline.

    Attributes
    ----------
    report_ : CurationReport
        Drop accounting from the last call to ``fit``.
    """

    def __init__(self, window=DEFAULT_WINDOW, position_threshold=DEFAULT_THRESHOLD):
        self.window = window
        self.position_threshold = position_threshold

    def _validated(self):
        return (
            check_window(self.window),
            check_unit_interval(self.position_threshold, "position_threshold"),
        )

    def fit(self, X, y=None):
        window, threshold = self._validated()
        _, self.report_ = curate(check_profiles(X), window, threshold)
        return self

    def transform(self, X):
        check_is_fitted(self, "report_")
        window, threshold = self._validated()
        curated, _ = curate(check_profiles(X), window, threshold)
        return curated

    def fit_transform(self, X, y=None):
        window, threshold = self._validated()
        curated, self.report_ = curate(check_profiles(X), window, threshold)
        return curated


class FibonacciIndicators(TransformerMixin, BaseEstimator):
    """Map author profiles to an ``(n_authors, 7)`` indicator matrix.

    Columns follow ``get_feature_names_out()``: P, P_prime, C, C_prime, h,
    h_prime, T_prime.  An undefined T' (no records) is NaN.

    Parameters
    ----------
    max_rank : int, default=100
        Extent of the precomputed credit table.
    tolerance : float, default=1e-18
        Summation tolerance for the reciprocal Fibonacci constant.
    as_of_year : int or None, default=None
        Only count records published up to this year.
    n_jobs : int or None, default=None
        Authors are evaluated in parallel through joblib; output order is
        always the input order.
    """

    def __init__(self, max_rank=100, tolerance=DEFAULT_TOLERANCE, as_of_year=None, n_jobs=None):
        self.max_rank = max_rank
        self.tolerance = tolerance
        self.as_of_year = as_of_year
        self.n_jobs = n_jobs

    def fit(self, X=None, y=None):
        check_positive_int(self.max_rank, "max_rank", minimum=2)
        self.table_ = build_credit_table(self.max_rank, self.tolerance)
        self.psi_ = self.table_.psi
        self.n_features_out_ = len(INDICATOR_KEYS)
        return self

    def indicator_sets(self, X) -> list[IndicatorSet]:
        check_is_fitted(self, "table_")
        profiles = check_profiles(X)
        if self.n_jobs in (None, 1) or len(profiles) < 2:
            return [indicator_set(p, self.table_, self.as_of_year) for p in profiles]
        return Parallel(n_jobs=self.n_jobs)(
            delayed(indicator_set)(p, self.table_, self.as_of_year) for p in profiles
        )

    def transform(self, X):
        rows = [
            [np.nan if v is None else float(v) for v in s.to_dict().values()]
            for s in self.indicator_sets(X)
        ]
        return np.asarray(rows, dtype=float).reshape(-1, len(INDICATOR_KEYS))

    def get_feature_names_out(self, input_features=None):
        return np.asarray(INDICATOR_KEYS, dtype=object)


class FibonacciBinner(TransformerMixin, BaseEstimator):
    """One-hot encode byline lengths into Fibonacci intervals.

    ``transform`` returns an ``(n, 13)`` indicator matrix (twelve intervals
    up to 233 plus an overflow column); ``shares`` gives the normalised
    distribution.
    """

    def fit(self, X=None, y=None):
        self.n_features_out_ = len(FIB_BIN_LABELS)
        return self

    def _lengths(self, X):
        arr = check_array(np.asarray(X).reshape(-1, 1), dtype=None, ensure_2d=True)
        return [int(v) for v in arr.ravel()]

    def transform(self, X):
        check_is_fitted(self, "n_features_out_")
        lengths = self._lengths(X)
        out = np.zeros((len(lengths), len(FIB_BIN_LABELS)), dtype=int)
        for i, n in enumerate(lengths):
            out[i, fib_bin_index(n)] = 1
        return out

    def shares(self, X):
        return fib_bin(self._lengths(X))

    def get_feature_names_out(self, input_features=None):
        return np.asarray(FIB_BIN_LABELS, dtype=object)


class LowessSmoother(RegressorMixin, BaseEstimator):
    """Local linear smoother with tricube weights.

    Parameters
    ----------
    frac : float, default=0.3
        Share of observations in each local fit.
    """

    def __init__(self, frac=DEFAULT_FRACTION):
        self.frac = frac

    def fit(self, X, y):
        check_fraction(self.frac, "frac")
        X, y = check_X_y(X, y, ensure_2d=False, y_numeric=True)
        X = np.asarray(X, dtype=float)
        if X.ndim == 2:
            if X.shape[1] != 1:
                raise ValueError(f"LowessSmoother takes one feature, got {X.shape[1]}")
            X = X[:, 0]
        self.x_ = X
        self.y_ = np.asarray(y, dtype=float)
        return self

    def predict(self, X):
        check_is_fitted(self, "x_")
        X = np.asarray(check_array(X, ensure_2d=False), dtype=float)
        if X.ndim == 2:
            X = X[:, 0]
        return lowess(self.x_, self.y_, frac=self.frac, x_eval=X)

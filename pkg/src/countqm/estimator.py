"""scikit-learn style wrapper: words in, counting-quasimorphism features out."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .quasimorphism import CountingQuasimorphism
from .validation import check_instance, check_words, resolve_word


class CountingFeatures(BaseEstimator, TransformerMixin):
    """One integer column per pattern: h_w(g), c_w(g) or c_{w^-1}(g).

    ``patterns`` entries are family references (``"w0"``, ``"w1^2"``) or
    literal words of the instance.
    """

    def __init__(self, instance="psl2z", patterns=("w0",), kind="h"):
        self.instance = instance
        self.patterns = patterns
        self.kind = kind

    def fit(self, X=None, y=None):
        if self.kind not in ("h", "c", "c_inverse"):
            raise ValueError(f"kind must be 'h', 'c' or 'c_inverse', got {self.kind!r}")
        if isinstance(self.patterns, str) or not len(self.patterns):
            raise ValueError("patterns must be a non-empty sequence")
        inst = check_instance(self.instance)
        self.instance_ = inst
        self.quasimorphisms_ = [CountingQuasimorphism(inst.model, resolve_word(inst, p))
                                for p in self.patterns]
        self.n_features_out_ = len(self.quasimorphisms_)
        if X is not None:
            check_words(inst.model, X)
        return self

    def transform(self, X):
        check_is_fitted(self, "quasimorphisms_")
        model = self.instance_.model
        words = check_words(model, X)
        out = np.zeros((len(words), self.n_features_out_), dtype=np.int64)
        for r, w in enumerate(words):
            g = model.element(w)
            for k, qm in enumerate(self.quasimorphisms_):
                out[r, k] = getattr(qm, self.kind)(g)
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "quasimorphisms_")
        return np.array([f"{self.kind}[{p}]" for p in self.patterns], dtype=object)

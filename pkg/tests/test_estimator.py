import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from countqm.estimator import CountingFeatures
from countqm.families import family_word
from countqm.validation import check_instance, check_words


def test_transform_values(sl2z):
    w0 = family_word(sl2z.family, 0)
    X = [w0, w0 * 2, sl2z.model.inverse_word(w0), ""]
    est = CountingFeatures(instance="sl2z", patterns=["w0", "w1"])
    out = est.fit(X).transform(X)
    assert out.dtype == np.int64
    assert out.tolist() == [[1, 0], [2, 0], [-1, 0], [0, 0]]


def test_kinds(psl2z):
    w0 = family_word(psl2z.family, 0)
    X = [psl2z.model.inverse_word(w0) * 2]
    assert CountingFeatures(patterns=["w0"], kind="c").fit().transform(X).tolist() == [[0]]
    assert CountingFeatures(patterns=["w0"], kind="c_inverse").fit().transform(X).tolist() == [[2]]


def test_literal_pattern_and_text_words():
    est = CountingFeatures(instance="psl2z", patterns=["A:1 B:1"], kind="c").fit()
    assert est.transform(["A:1 B:1 A:1 B:1"]).tolist() == [[2]]


def test_params_and_clone():
    est = CountingFeatures(instance="klein-hnn", patterns=("w0",), kind="h")
    assert est.get_params() == {"instance": "klein-hnn", "patterns": ("w0",), "kind": "h"}
    c = clone(est).set_params(kind="c")
    assert c.kind == "c" and est.kind == "h"


def test_not_fitted():
    with pytest.raises(NotFittedError):
        CountingFeatures().transform(["A:1"])


@pytest.mark.parametrize("kw", [{"kind": "x"}, {"patterns": []}, {"patterns": "w0"}, {"instance": 3}])
def test_bad_params(kw):
    with pytest.raises((ValueError, TypeError)):
        CountingFeatures(**kw).fit()


def test_bad_input():
    est = CountingFeatures().fit()
    with pytest.raises(TypeError):
        est.transform("A:1")
    with pytest.raises(ValueError):
        est.transform(["A:7"])


def test_pipeline(klein):
    w0 = family_word(klein.family, 0)
    pipe = make_pipeline(CountingFeatures(instance="klein-hnn"), FunctionTransformer(np.abs))
    assert pipe.fit_transform([klein.model.inverse_word(w0)]).tolist() == [[1]]


def test_feature_names():
    est = CountingFeatures(patterns=["w0", "w1"]).fit()
    assert list(est.get_feature_names_out()) == ["h[w0]", "h[w1]"]


def test_validation_helpers(psl2z):
    assert check_instance(psl2z) is psl2z
    assert check_words(psl2z.model, ["A:1", [("B", 1)]]) == [
        psl2z.model.parse_word("A:1"),
        psl2z.model.parse_word("B:1"),
    ]

import json

import pytest

from countqm.instances import BUILTINS, ConfigError, instance_from_config, load_instance


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_load(name):
    inst = load_instance(name)
    assert inst.name == name
    assert inst.kind in ("amalgam", "hnn")
    assert inst.cap("seed") == 42


def test_config_file(tmp_path):
    cfg = dict(BUILTINS["sl2z"], name="mine")
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(cfg))
    inst = load_instance(path=path)
    assert inst.name == "mine"
    assert inst.model.abelianization().invariants.nontrivial == (12,)


def test_config_file_wins_over_name(tmp_path):
    path = tmp_path / "k.json"
    path.write_text(json.dumps(BUILTINS["klein-hnn"]))
    assert load_instance("psl2z", path).kind == "hnn"


@pytest.mark.parametrize(
    "patch, msg",
    [
        ({"kind": "bogus"}, "invalid config"),
        ({"iotaA": "map:{1->2}"}, "homomorphism"),
        ({"A": "cyclic:4", "iotaA": "map:{1->2}", "family": {"a1": 1, "a2": 3, "b": 1}}, "C\\A/C"),
        ({"A": "nonsense:3"}, "cannot parse"),
    ],
)
def test_bad_configs(patch, msg):
    cfg = {**BUILTINS["sl2z"], **patch}
    with pytest.raises(ConfigError, match=msg.replace("\\", "\\\\")):
        instance_from_config(cfg)


def test_missing_fields():
    cfg = dict(BUILTINS["klein-hnn"])
    del cfg["phi"]
    with pytest.raises(ConfigError):
        instance_from_config(cfg)


def test_unknown_builtin():
    with pytest.raises(ConfigError, match="unknown instance"):
        load_instance("gl3z")


def test_unreadable_file(tmp_path):
    with pytest.raises(ConfigError):
        load_instance(path=tmp_path / "missing.json")


def test_caps_override():
    inst = instance_from_config({**BUILTINS["psl2z"], "caps": {"max_index": 1}})
    assert inst.family.max_index == 1
    assert inst.caps["max_n"] == 3

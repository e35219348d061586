import json
import threading

import pytest

from ginlab.cache import GinCache, cache_key
from ginlab.gin import gin, gin_sequence
from ginlab.poly import RingSpec, parse_polynomial

R = RingSpec(("x", "y"))
GENS = [parse_polynomial("x^2 + y^2", R), parse_polynomial("x*y", R)]


def test_key_changes_with_every_input():
    base = cache_key(GENS, 2, 7, 1000)
    assert base == cache_key(list(GENS), 2, 7, 1000)
    assert len({
        base,
        cache_key(GENS, 3, 7, 1000),
        cache_key(GENS, 2, 8, 1000),
        cache_key(GENS, 2, 7, 999),
        cache_key(GENS, 2, 7, 1000, version="0.0.0"),
        cache_key(GENS[:1], 2, 7, 1000),
        cache_key(GENS[::-1], 2, 7, 1000),
    }) == 7


def test_key_depends_on_field():
    from ginlab.poly import Field
    ring = R.with_field(Field(32003))
    other = [parse_polynomial(str(g), ring) for g in GENS]
    assert cache_key(GENS, 1, 0, 1000) != cache_key(other, 1, 0, 1000)


def test_empty_cache_returns_none(tmp_path):
    c = GinCache(tmp_path)
    assert c.cache_get("ab" * 32) is None
    assert c.get(GENS, 1, 0, 1000) is None


def test_roundtrip(tmp_path):
    c = GinCache(tmp_path)
    J, cert = gin(GENS, 5)
    c.put(GENS, 1, 5, 1000, J, cert)
    assert c.get(GENS, 1, 5, 1000) == (J, cert)


def test_entries_are_immutable(tmp_path):
    c = GinCache(tmp_path)
    c.cache_put("cd" * 32, {"v": 1})
    c.cache_put("cd" * 32, {"v": 2})
    assert c.cache_get("cd" * 32) == {"v": 1}


def test_concurrent_puts_leave_one_valid_entry(tmp_path):
    c = GinCache(tmp_path)
    key = "ef" * 32
    barrier = threading.Barrier(8)

    def worker(i):
        barrier.wait()
        c.cache_put(key, {"writer": i, "payload": list(range(2000))})

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    value = c.cache_get(key)
    assert value["payload"] == list(range(2000))
    files = list(tmp_path.rglob("*"))
    assert [f.name for f in files if f.is_file()] == [key + ".json"]


def test_corrupt_entry_is_reported(tmp_path):
    c = GinCache(tmp_path)
    key = "aa" * 32
    path = tmp_path / key[:2] / f"{key}.json"
    path.parent.mkdir(parents=True)
    path.write_text("{not json")
    with pytest.raises(json.JSONDecodeError):
        c.cache_get(key)


def test_env_var_selects_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("GINLAB_CACHE", str(tmp_path / "here"))
    assert GinCache().root == tmp_path / "here"


def test_sequence_with_cache_matches_cold_run(tmp_path):
    cold = gin_sequence(GENS, 3, seed=11)
    c = GinCache(tmp_path)
    first = gin_sequence(GENS, 3, seed=11, cache=c)
    warm = gin_sequence(GENS, 3, seed=11, cache=c)
    assert cold.entries == first.entries == warm.entries
    assert len(list(tmp_path.rglob("*.json"))) == 3

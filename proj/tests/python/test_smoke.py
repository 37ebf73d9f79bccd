# Copyright 2026 The Rolegrad Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math
import os
from pathlib import Path

import numpy as np
import pytest

import rolegrad

FIXTURES = Path(os.environ.get("ROLEGRAD_FIXTURES",
                               Path(__file__).resolve().parents[1] / "fixtures"))


def grid(labels, rows):
    probs = np.zeros((len(rows), labels.num_tags))
    for i, row in enumerate(rows):
        for tag, p in row.items():
            probs[i, labels.tag_index(tag)] = p
        probs[i, 0] = 1.0 - sum(row.values())
    return probs


def test_truth_tables():
    for a in (0.0, 1.0):
        assert rolegrad.negate(a) == 1.0 - a
        for b in (0.0, 1.0):
            assert rolegrad.godel_and([a, b]) == min(a, b)
            assert rolegrad.godel_or([a, b]) == max(a, b)
            loss, _ = rolegrad.imply_nll(a, b)
            assert (loss == 0.0) == (a == 0.0 or b == 1.0)


def test_unique_worked_example():
    labels = rolegrad.LabelSet(["A0", "A1"])
    probs = grid(labels, [{"B-A0": 0.9}, {"B-A0": 0.8}, {"B-A0": 0.05}])
    loss, grads = rolegrad.loss_unique(probs, labels)
    assert loss == pytest.approx(math.log(0.9 / 0.2) + math.log(0.8 / 0.1))
    assert grads[0].shape == probs.shape


def test_overlap_and_frame():
    labels = rolegrad.LabelSet(["A0", "A1"])
    u = grid(labels, [{}, {"B-A1": 0.7}, {"I-A1": 0.8}, {"I-A1": 0.8}, {}])
    v = grid(labels, [{}, {"B-A0": 0.1, "I-A0": 0.2}, {},
                      {"B-A0": 0.2, "I-A0": 0.7}, {"I-A0": 0.9}])
    loss, grads = rolegrad.loss_overlap([u, v], labels, beam_k=1)
    assert loss == pytest.approx(0.8473, abs=1e-3)
    assert len(grads) == 2
    exhaustive, _ = rolegrad.loss_overlap([u, v], labels, beam_k=None)
    assert exhaustive >= loss - 1e-12
    f, _ = rolegrad.loss_frame(u, ["A0"], labels)
    assert f >= 0.0


def test_invalid_grid_rejected():
    labels = rolegrad.LabelSet(["A0"])
    with pytest.raises(ValueError):
        rolegrad.loss_unique(np.full((2, labels.num_tags), 0.9), labels)


def test_viterbi_is_bio_valid():
    rng = np.random.default_rng(0)
    tags, _ = rolegrad.viterbi(rng.normal(size=(6, 5)))
    assert rolegrad.LabelSet.is_valid(tags)


def test_check_planted_fixture():
    report = rolegrad.check_file(str(FIXTURES / "planted_duplicate.jsonl"))
    assert report["rho_u"] == pytest.approx(10.0)
    assert report["propositions"] == 10


def test_synth_and_cli(tmp_path):
    out = tmp_path / "train.jsonl"
    rolegrad.synth_corpus(1, 20, 16, 8, 0.3, str(out))
    code, stdout, _ = rolegrad.run_cli(["check", "--data", str(out)])
    assert code == 0
    assert '"rho_u"' in stdout
    code, _, _ = rolegrad.run_cli(["no-such-command"])
    assert code == 2

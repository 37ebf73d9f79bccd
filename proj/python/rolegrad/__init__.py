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

"""Differentiable structural constraints for BIO semantic role labeling."""

from rolegrad._core import (
    ConfigError,
    DataError,
    LabelSet,
    NumericError,
    check_file,
    godel_and,
    godel_or,
    imply_nll,
    loss_frame,
    loss_overlap,
    loss_unique,
    negate,
    product_imply,
    run_cli,
    synth_corpus,
    viterbi,
)

__all__ = [
    "ConfigError",
    "DataError",
    "LabelSet",
    "NumericError",
    "check_file",
    "godel_and",
    "godel_or",
    "imply_nll",
    "loss_frame",
    "loss_overlap",
    "loss_unique",
    "negate",
    "product_imply",
    "run_cli",
    "synth_corpus",
    "viterbi",
]

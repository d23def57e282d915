# Copyright 2026 The aggrid Authors. All Rights Reserved.
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
#

"""Aggression identification (NAG/CAG/OAG) backed by the C++ core."""

from aggrid._core import (
    LABELS,
    DataError,
    Error,
    Model,
    ResourceError,
    UsageError,
    char_ngrams,
    clean,
    confusion,
    edit_distance,
    random_baseline,
    run_cli,
    skip_grams,
    tokenize,
    transliterate,
    weighted_f1,
    word_ngrams,
)

__all__ = [
    "LABELS",
    "DataError",
    "Error",
    "Model",
    "ResourceError",
    "UsageError",
    "char_ngrams",
    "clean",
    "confusion",
    "edit_distance",
    "random_baseline",
    "run_cli",
    "skip_grams",
    "tokenize",
    "transliterate",
    "weighted_f1",
    "word_ngrams",
]

# Copyright 2026 The SCPOS Toolkit Authors.
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

"""Sentiment classification and polarity-word extraction toolkit."""

from ._core import (
    EndpointError,
    IoError,
    Lexicon,
    Matcher,
    Record,
    ValidationError,
    __version__,
    aggregate,
    annotate,
    build_prompt,
    decode,
    encode,
    failed_sample,
    load_lexicon,
    merge_lexicons,
    parse_lexicon,
    profile,
    read_corpus,
    score_sample,
    write_corpus,
)

__all__ = [
    "EndpointError",
    "IoError",
    "Lexicon",
    "Matcher",
    "Record",
    "ValidationError",
    "__version__",
    "aggregate",
    "annotate",
    "build_prompt",
    "decode",
    "encode",
    "failed_sample",
    "load_lexicon",
    "merge_lexicons",
    "parse_lexicon",
    "profile",
    "read_corpus",
    "score_sample",
    "write_corpus",
]

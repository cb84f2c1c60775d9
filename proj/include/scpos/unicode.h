// Copyright 2026 The SCPOS Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCPOS_UNICODE_H_
#define SCPOS_UNICODE_H_

#include <string>
#include <string_view>

namespace scpos {

// NFC normalization of UTF-8 text. Ill-formed sequences become U+FFFD.
std::string NormalizeNfc(std::string_view utf8);

bool IsNfc(std::string_view utf8);

// Decodes UTF-8 into code points; ill-formed sequences become U+FFFD.
std::u32string Utf8ToUtf32(std::string_view utf8);

std::string Utf32ToUtf8(std::u32string_view text);

// Number of code points.
size_t CodePointLength(std::string_view utf8);

// Strips ASCII whitespace from both ends.
std::string_view TrimAscii(std::string_view s);

}  // namespace scpos

#endif  // SCPOS_UNICODE_H_

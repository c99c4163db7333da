//
// Copyright 2026 The dpamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPAMP_COMMON_HPP_
#define DPAMP_COMMON_HPP_

#include <stdexcept>
#include <string>

namespace dpamp {

// Invalid inputs throw std::invalid_argument with a "<function>: <reason>"
// message. The two exception types below are kept distinct so callers (the
// CLI in particular) can map failure classes to different exit codes.

/// A combinatorial or memory guard was exceeded (e.g. too many subsets to
/// enumerate). Retry with smaller inputs.
class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be read, parsed, or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dpamp

#endif  // DPAMP_COMMON_HPP_

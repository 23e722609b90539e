// Copyright 2026 The hpxcap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HPXCAP_ERRORS_HPP_
#define HPXCAP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hpxcap {

// All library failures derive from std::domain_error so callers can catch
// either the precise condition or the family.
class Error : public std::domain_error {
 public:
  explicit Error(const std::string& what) : std::domain_error(what) {}
};

#define HPXCAP_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

HPXCAP_DEFINE_ERROR(DomainError);
HPXCAP_DEFINE_ERROR(PoleError);
HPXCAP_DEFINE_ERROR(OutOfDomain);
HPXCAP_DEFINE_ERROR(InvalidIndex);
HPXCAP_DEFINE_ERROR(DegenerateCap);
HPXCAP_DEFINE_ERROR(SizeLimit);
HPXCAP_DEFINE_ERROR(SingularParameter);
HPXCAP_DEFINE_ERROR(NonRegularCurve);
HPXCAP_DEFINE_ERROR(LevelOverflow);

#undef HPXCAP_DEFINE_ERROR

}  // namespace hpxcap

#endif  // HPXCAP_ERRORS_HPP_

// Copyright 2026 The Polmix Authors
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

#ifndef POLMIX_ERRORS_H
#define POLMIX_ERRORS_H

#include <stdexcept>
#include <string>

namespace polmix {

/// Malformed or unphysical input. Maps to CLI exit code 2.
class InvalidInput : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// The requested state cannot be produced by the scheme (e.g. zero success
/// probability). Maps to CLI exit code 3.
class Infeasible : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An iterative routine hit its iteration cap. Signals numerical degeneracy.
class NotConverged : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace polmix

#endif

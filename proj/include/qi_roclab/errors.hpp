// Copyright 2026 The qi-roclab Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qi {

// Parameter outside its physical or mathematical domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Matrix with the wrong shape or symmetry for the requested operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Covariance that violates the uncertainty principle.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fock truncation too small for the requested trace accuracy.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int required_signal, int required_idler)
      : std::runtime_error(what),
        required_n_max_signal(required_signal),
        required_n_max_idler(required_idler) {}
  int required_n_max_signal;
  int required_n_max_idler;
};

// Likelihood model produced an impossible observation (zero total likelihood).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Receiver cycle requested past its configured number of cycles.
class SequencingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qi

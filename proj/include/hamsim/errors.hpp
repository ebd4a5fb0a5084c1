// Copyright 2026 The hamsim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace hamsim {

/** Base class of every error raised by the library. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Operands live on different numbers of sites or Hilbert-space sizes. */
class DimensionError : public Error {
 public:
  using Error::Error;
};

/** A size cap (dense realization, minor enumeration) would be exceeded. */
class CapacityError : public Error {
 public:
  using Error::Error;
};

/** An argument lies outside the domain of the operation (e.g. j > n). */
class DomainError : public Error {
 public:
  using Error::Error;
};

/** A documented precondition of the operation does not hold. */
class ContractError : public Error {
 public:
  using Error::Error;
};

/**
 * Raised where an operation needs a non-commuting pair but got a commuting
 * one; callers should switch to the simultaneous-eigenbasis path.
 */
class CommutingPairError : public ContractError {
 public:
  using ContractError::ContractError;
};

/** Internal numerical inconsistency, e.g. a dense matrix that is not Hermitian. */
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace hamsim

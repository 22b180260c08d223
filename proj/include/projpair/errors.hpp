/*
 * Copyright 2026 The projpair Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PROJPAIR_ERRORS_HPP
#define PROJPAIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace projpair {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

/// Malformed or out-of-contract input (CLI exit code 1).
class InputError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "input"; }
};

/// Rank or dimension constraints of a construction are not met.
class DimensionError : public InputError {
public:
    using InputError::InputError;
    const char* kind() const noexcept override { return "dimension"; }
};

/// A computation could not be carried out reliably (CLI exit code 2).
class NumericalError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "numerical"; }
};

/// Unitary has an eigenvalue on the principal-log branch cut at -1.
class BranchCutError : public NumericalError {
public:
    using NumericalError::NumericalError;
    const char* kind() const noexcept override { return "branch_cut"; }
};

class SingularInputError : public NumericalError {
public:
    SingularInputError(const std::string& what, double sigma_min)
        : NumericalError(what), sigma_min_(sigma_min) {}
    double sigma_min() const noexcept { return sigma_min_; }
    const char* kind() const noexcept override { return "singular_input"; }

private:
    double sigma_min_;
};

class NoUniqueGeodesicError : public NumericalError {
public:
    using NumericalError::NumericalError;
    const char* kind() const noexcept override { return "no_unique_geodesic"; }
};

/// Operator fails the equation T^2 = T T* T characterizing products of two projections.
class NotAProductError : public NumericalError {
public:
    NotAProductError(const std::string& what, double residual)
        : NumericalError(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }
    const char* kind() const noexcept override { return "not_a_product"; }

private:
    double residual_;
};

class OutOfChartError : public NumericalError {
public:
    using NumericalError::NumericalError;
    const char* kind() const noexcept override { return "out_of_chart"; }
};

class DomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
    const char* kind() const noexcept override { return "domain"; }
};

/// Internal cross-checks between computed pieces disagree.
class ConsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
    const char* kind() const noexcept override { return "consistency"; }
};

}  // namespace projpair

#endif  // PROJPAIR_ERRORS_HPP

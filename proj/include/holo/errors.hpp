// SPDX-License-Identifier: Apache-2.0
//
// holo-fading: Fourier plane-wave generator for spatially-stationary small-scale fading
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace holo
{

// Base of every error raised by the library. Catch this to handle all of them.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Precondition violated by a caller-supplied argument.
class InvalidArgument : public Error
{
public:
    using Error::Error;
};

// Wavenumber outside the propagating disk kx^2 + ky^2 <= kappa^2 (evanescent direction).
class OutOfDisk : public Error
{
public:
    using Error::Error;
};

// Plane-wave spectrum requested so close to the disk edge that it is numerically singular.
class BoundarySingularity : public Error
{
public:
    using Error::Error;
};

// Lattice index outside the admissible band of the aperture.
class IndexOutOfBand : public Error
{
public:
    using Error::Error;
};

// Migration distance |z| not below min(Lx, Ly).
class MigrationRange : public Error
{
public:
    using Error::Error;
};

// Sampling grid cannot represent every lattice harmonic.
class GridTooCoarse : public Error
{
public:
    using Error::Error;
};

// Dense correlation matrix requested for more points than the baseline supports.
class GridTooLarge : public Error
{
public:
    using Error::Error;
};

// Correlation matrix has an eigenvalue below the PSD tolerance.
class NotPSD : public Error
{
public:
    using Error::Error;
};

class InsufficientRealizations : public Error
{
public:
    using Error::Error;
};

class LagMismatch : public Error
{
public:
    using Error::Error;
};

// Bad configuration value; the message names the offending key or flag.
class ConfigError : public Error
{
public:
    ConfigError(std::string key, const std::string &what)
        : Error(key + ": " + what), key_(std::move(key))
    {
    }

    const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace holo

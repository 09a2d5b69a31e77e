// bsec - artificial-noise precoding and secrecy-rate optimization for MIMO backscatter links
// Copyright (C) 2026 the bsec authors
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

#include <complex>
#include <cstdint>
#include <random>

namespace bsec
{

// splitmix64 finalizer; used to decorrelate seed/stream pairs before feeding
// the engine.
inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream)
{
    return mix64(mix64(master_seed) ^ mix64(stream + 0x51ed2701a9b5d3f1ULL));
}

// Circularly-symmetric complex Gaussian source: unit total variance, i.e.
// variance 1/2 per real and imaginary part. The transform is spelled out
// (rather than using std::normal_distribution) so that streams are identical
// across standard library implementations.
class ComplexGaussianRng
{
  public:
    explicit ComplexGaussianRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() // [0, 1)
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::complex<double> next()
    {
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        const double radius = std::sqrt(-std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

} // namespace bsec

#pragma once

#include <orthospace/exactnum.hpp>
#include <orthospace/rays3.hpp>

#include <json.hpp>

#include <fstream>
#include <random>
#include <string>

namespace support {

inline std::string fixture(const std::string& name)
{
    return std::string(FIXTURE_DIR) + "/" + name;
}

inline nlohmann::json load_fixture(const std::string& name)
{
    std::ifstream in(fixture(name));
    return nlohmann::json::parse(in);
}

/// Any scalar of the field, zero included about one time in eight.
inline orthospace::Scalar any_scalar(std::mt19937_64& rng, orthospace::Field f)
{
    if (std::uniform_int_distribution<int>(0, 7)(rng) == 0)
        return orthospace::Scalar::zero(f);
    return orthospace::random_nonzero_scalar(rng, f);
}

inline orthospace::Vector3 nonzero_vector(std::mt19937_64& rng, orthospace::Field f)
{
    for (;;) {
        orthospace::Vector3 v(any_scalar(rng, f), any_scalar(rng, f), any_scalar(rng, f));
        if (!v.is_zero())
            return v;
    }
}

}  // namespace support

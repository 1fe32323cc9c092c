#pragma once

#include <json.hpp>

#include <string>

#include "bianchi/eisenstein.hpp"

namespace bianchi {

using Json = nlohmann::json;

// complex numbers travel as decimal strings so precision beyond double survives
Json complex_json(const Complex& z);
Json quadint_json(const QuadInt& a);

// "x+y*w" with w the basis generator, e.g. "3", "-1+2*w", "w", "-w"
QuadInt parse_quadint(const std::string& s, const OrderSpec& ord);
// comma list "a,b,c,d" of quadint entries, row major
Mat2 parse_matrix(const std::string& s, const OrderSpec& ord);
// "re,im" decimal pair
Complex parse_complex(const std::string& s);

// cache of per-lattice constants, keyed by (disc, basis hash, precision)
std::string cache_directory();

struct CacheOutcome {
    bool hit = false;
    bool corrupt = false;
    std::string path;
};

LatticeConstants cached_constants(const Lattice& lat, const SeriesParams& params,
                                  CacheOutcome* status = nullptr);
// removes every cache entry; returns the number of files deleted
int clear_cache();

}  // namespace bianchi

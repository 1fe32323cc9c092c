#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bianchi/io.hpp"

namespace bianchi {

struct SuiteOptions {
    long disc = -8;
    std::string n_gen = "w";  // level generator as a quadint literal
    unsigned prec_bits = 128;
    unsigned samples = 25;
    std::uint64_t seed = 1;
    std::int64_t height = 3;
    std::int64_t max_c_norm = 200;
};

struct SuiteReport {
    std::string suite;
    std::vector<double> residuals;
    std::string max_residual;  // decimal string, full precision
    std::string tolerance;
    bool pass = false;
    double seconds = 0;
    std::vector<std::string> notes;
    Json meta;

    Json to_json() const;
};

OrderSpec order_from_disc(long disc);

SuiteReport run_cocycle_relation(const SuiteOptions& opts);
SuiteReport run_homomorphism(const SuiteOptions& opts);
SuiteReport run_transformation(const SuiteOptions& opts);
SuiteReport run_internal_consistency(const SuiteOptions& opts);
SuiteReport run_hecke(const SuiteOptions& opts, const std::string& p_literal);
SuiteReport run_involution(const SuiteOptions& opts);
SuiteReport run_harmonicity(const SuiteOptions& opts);
SuiteReport run_distribution(const SuiteOptions& opts);
SuiteReport run_integral_check(const SuiteOptions& opts);
SuiteReport run_lseries_closed(const SuiteOptions& opts);
SuiteReport run_integrality(const SuiteOptions& opts);

}  // namespace bianchi

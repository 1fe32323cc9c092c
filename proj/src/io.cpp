#include "bianchi/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bianchi {

namespace fs = std::filesystem;

Json complex_json(const Complex& z) {
    return Json{{"re", to_decimal_string(re(z))}, {"im", to_decimal_string(im(z))}};
}

Json quadint_json(const QuadInt& a) { return Json(a.str()); }

namespace {

std::int64_t parse_int(const std::string& tok) {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw config_error("bad integer literal: " + tok);
    return v;
}

}  // namespace

QuadInt parse_quadint(const std::string& s, const OrderSpec& ord) {
    std::int64_t x = 0, y = 0;
    std::size_t i = 0;
    bool any = false;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+') {
            ++i;
        } else if (s[i] == '-') {
            sign = -1;
            ++i;
        }
        std::size_t start = i;
        while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
        std::string term = s.substr(start, i - start);
        if (term.empty()) throw config_error("bad quadint literal: " + s);
        any = true;
        auto star = term.find('*');
        if (term == "w") {
            y += sign;
        } else if (star != std::string::npos) {
            if (term.substr(star + 1) != "w")
                throw config_error("bad quadint literal: " + s);
            y += sign * parse_int(term.substr(0, star));
        } else if (term.back() == 'w') {
            y += sign * parse_int(term.substr(0, term.size() - 1));
        } else {
            x += sign * parse_int(term);
        }
    }
    if (!any) throw config_error("empty quadint literal");
    return QuadInt(x, y, ord);
}

Mat2 parse_matrix(const std::string& s, const OrderSpec& ord) {
    std::vector<QuadInt> entries;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) entries.push_back(parse_quadint(tok, ord));
    if (entries.size() != 4) throw config_error("matrix needs 4 comma-separated entries");
    return Mat2(entries[0], entries[1], entries[2], entries[3]);
}

Complex parse_complex(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return Complex(Real(s), Real(0));
    return Complex(Real(s.substr(0, comma)), Real(s.substr(comma + 1)));
}

std::string cache_directory() {
    if (const char* env = std::getenv("BIANCHI_CACHE_DIR")) return env;
    return ".bianchi-cache";
}

namespace {

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string basis_fingerprint(const Lattice& lat) {
    // fixed-width rendering so the hash does not depend on working precision
    std::ostringstream os;
    os << re(lat.w1()).str(40, std::ios_base::scientific) << "|"
       << im(lat.w1()).str(40, std::ios_base::scientific) << "|"
       << re(lat.w2()).str(40, std::ios_base::scientific) << "|"
       << im(lat.w2()).str(40, std::ios_base::scientific);
    return os.str();
}

std::string payload_string(const Json& j) {
    return j.value("disc", "") + "|" + j.value("basis", "") + "|" +
           std::to_string(j.value("digits", 0)) + "|" + std::to_string(j.value("kappa", 0)) +
           "|" + j["e2zero"].value("re", "") + "|" + j["e2zero"].value("im", "");
}

}  // namespace

LatticeConstants cached_constants(const Lattice& lat, const SeriesParams& params,
                                  CacheOutcome* status) {
    std::string fp = basis_fingerprint(lat);
    std::uint64_t h = fnv1a(fp);
    std::ostringstream name;
    name << "consts_d" << lat.order().disc() << "_b" << std::hex << h << std::dec << "_p"
         << params.digits << ".json";
    fs::path path = fs::path(cache_directory()) / name.str();
    CacheOutcome outcome;
    outcome.path = path.string();

    if (fs::exists(path)) {
        try {
            std::ifstream in(path);
            Json j = Json::parse(in);
            std::uint64_t want = std::stoull(j.value("checksum", "0"), nullptr, 16);
            if (fnv1a(payload_string(j)) != want || j.value("basis", "") != fp)
                throw config_error("cache checksum mismatch");
            Complex e2(Real(j["e2zero"].value("re", "0")), Real(j["e2zero"].value("im", "0")));
            outcome.hit = true;
            if (status) *status = outcome;
            return LatticeConstants(lat, params, e2, j.value("kappa", 2));
        } catch (const std::exception&) {
            outcome.corrupt = true;
        }
    }

    LatticeConstants lc(lat, params);
    Json j;
    j["disc"] = std::to_string(lat.order().disc());
    j["basis"] = fp;
    j["digits"] = static_cast<int>(params.digits);
    j["kappa"] = lc.character_scale();
    j["e2zero"] = Json{{"re", re(lc.e2zero()).str(params.digits + 10, std::ios_base::scientific)},
                       {"im", im(lc.e2zero()).str(params.digits + 10, std::ios_base::scientific)}};
    std::ostringstream ck;
    ck << std::hex << fnv1a(payload_string(j));
    j["checksum"] = ck.str();
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path);
    if (out) out << j.dump(2) << "\n";
    if (status) *status = outcome;
    return lc;
}

int clear_cache() {
    fs::path dir(cache_directory());
    int removed = 0;
    std::error_code ec;
    if (!fs::exists(dir, ec)) return 0;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.path().extension() == ".json" && fs::remove(entry.path(), ec)) ++removed;
    }
    return removed;
}

}  // namespace bianchi

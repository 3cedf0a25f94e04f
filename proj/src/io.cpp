#include "gcn/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gcn {

using nlohmann::json;

std::string solution_to_json(const NetworkParams& params, const NetworkSolution& sol) {
    sol.check_shapes(params);
    json j;
    j["q"] = sol.field->order();
    j["t"] = sol.t;
    j["h"] = params.h;
    j["r"] = params.r;
    j["alpha"] = params.alpha;
    j["ell"] = params.ell;
    j["eps"] = params.eps;
    json mats = json::array();
    for (const Matrix& a : sol.coeffs) mats.push_back(a.data());
    j["A"] = std::move(mats);
    return j.dump(2) + "\n";
}

std::pair<NetworkParams, NetworkSolution> solution_from_json(const std::string& text) {
    const json j = json::parse(text);
    NetworkParams params;
    params.h = j.at("h").get<int64_t>();
    params.r = j.at("r").get<int64_t>();
    params.alpha = j.at("alpha").get<int64_t>();
    params.ell = j.at("ell").get<int64_t>();
    params.eps = j.at("eps").get<int64_t>();
    params.validate();
    NetworkSolution sol;
    sol.field = Gf::make(j.at("q").get<uint64_t>());
    sol.t = j.at("t").get<int64_t>();
    const int64_t rows = params.ell * sol.t;
    const int64_t cols = params.h * sol.t;
    for (const json& entries : j.at("A")) {
        Matrix a(sol.field, rows, cols);
        if (entries.size() != a.data().size())
            throw std::invalid_argument("solution file: coding matrix entry count mismatch");
        for (size_t i = 0; i < a.data().size(); ++i) {
            const uint32_t v = entries[i].get<uint32_t>();
            if (v >= sol.field->order())
                throw std::invalid_argument("solution file: entry outside the field");
            a.data()[i] = v;
        }
        sol.coeffs.push_back(std::move(a));
    }
    sol.check_shapes(params);
    return {params, sol};
}

std::string covering_code_to_json(const CoveringCode& code) {
    code.params.validate();
    json j;
    j["n"] = code.params.n;
    j["k"] = code.params.k;
    j["delta"] = code.params.delta;
    j["alpha"] = code.params.alpha;
    j["q"] = code.params.field->order();
    json words = json::array();
    for (const auto& [sub, mult] : code.codewords) {
        json w;
        w["basis"] = sub.basis().data();
        w["multiplicity"] = mult;
        words.push_back(std::move(w));
    }
    j["codewords"] = std::move(words);
    return j.dump(2) + "\n";
}

CoveringCode covering_code_from_json(const std::string& text) {
    const json j = json::parse(text);
    CoveringCode code;
    code.params.n = j.at("n").get<int64_t>();
    code.params.k = j.at("k").get<int64_t>();
    code.params.delta = j.at("delta").get<int64_t>();
    code.params.alpha = j.at("alpha").get<int64_t>();
    code.params.field = Gf::make(j.at("q").get<uint64_t>());
    code.params.validate();
    for (const json& w : j.at("codewords")) {
        const auto& entries = w.at("basis");
        Matrix basis(code.params.field, code.params.k, code.params.n);
        if (entries.size() != basis.data().size())
            throw std::invalid_argument("covering code file: basis entry count mismatch");
        for (size_t i = 0; i < basis.data().size(); ++i)
            basis.data()[i] = entries[i].get<uint32_t>();
        const Subspace sub = Subspace::from_rows(basis);
        if (sub.dim() != code.params.k)
            throw std::invalid_argument("covering code file: basis is not full rank");
        code.codewords.emplace_back(sub, w.at("multiplicity").get<int64_t>());
    }
    return code;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
}

}  // namespace gcn

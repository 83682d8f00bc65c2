#include "gauss/report.hpp"

#include <cstdint>

namespace gauss {

nlohmann::json int_json(const Int & v)
{
    if (mpz_sizeinbase(v.get_mpz_t(), 2) <= 62)
        return static_cast<std::int64_t>(std::stoll(v.get_str()));
    return v.get_str();
}

nlohmann::json to_json(const WitnessedResidue & r)
{
    nlohmann::json j;
    j["raw"] = int_json(r.raw);
    j["kernel"] = int_json(r.kernel);
    j["witness"] = r.witness ? int_json(*r.witness) : nlohmann::json(nullptr);
    j["provenance"] = {{"source", to_string(r.provenance.source)}, {"detail", r.provenance.detail}};
    j["modulus"] = int_json(r.modulus);
    return j;
}

nlohmann::json to_json(const FactorReport & rep)
{
    nlohmann::json j;
    j["input"] = int_json(rep.input);
    j["status"] = rep.status == FactorStatus::complete ? "complete" : "failed";
    nlohmann::json factors = nlohmann::json::array();
    for (const auto & pp : rep.factors)
        factors.push_back({{"prime", int_json(pp.prime)}, {"exponent", pp.exponent}});
    j["factors"] = factors;
    j["unfactored"] = int_json(rep.unfactored);
    nlohmann::json residues = nlohmann::json::array();
    for (const auto & r : rep.residues)
        residues.push_back(to_json(r));
    j["residues"] = residues;
    nlohmann::json survivors = nlohmann::json::array();
    for (const auto & s : rep.survivors)
        survivors.push_back({{"modulus", int_json(s.modulus)}, {"prime", int_json(s.prime)}, {"divides", s.divides}});
    j["survivors"] = survivors;
    nlohmann::json early = nlohmann::json::array();
    for (const auto & e : rep.early_factors)
        early.push_back(int_json(e));
    j["early_factors"] = early;
    j["message"] = rep.message;
    return j;
}

}  // namespace gauss

#include <polyprod/error.hpp>
#include <polyprod/io.hpp>

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace polyprod {

auto to_json(const FacePoset& p) -> std::string
{
    nlohmann::ordered_json j;
    j["faces"] = nlohmann::ordered_json::array();
    for (FaceId f = 0; f < p.size(); ++f)
        j["faces"].push_back({{"id", f}, {"rank", p.rank(f)}});
    j["covers"] = nlohmann::ordered_json::array();
    for (auto [u, l] : p.covers())
        j["covers"].push_back({u, l});
    return j.dump();
}

auto poset_from_json(const std::string& text) -> FacePoset
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, e.what());
    }
    if (! j.is_object() || ! j.contains("faces") || ! j.contains("covers"))
        throw Error(ErrorCode::InvalidInput, "expected \"faces\" and \"covers\"");
    try {
        const auto& faces = j.at("faces");
        std::vector<int> ranks(faces.size());
        std::vector<char> seen(faces.size(), 0);
        for (const auto& f : faces) {
            int id = f.at("id").get<int>();
            if (id < 0 || id >= static_cast<int>(faces.size()) || seen[id])
                throw Error(ErrorCode::InvalidInput, "face ids must be 0..count-1 without repeats");
            seen[id] = 1;
            ranks[id] = f.at("rank").get<int>();
        }
        std::vector<Cover> covers;
        for (const auto& c : j.at("covers")) {
            if (! c.is_array() || c.size() != 2)
                throw Error(ErrorCode::InvalidInput, "covers are [upper, lower] pairs");
            covers.emplace_back(c[0].get<int>(), c[1].get<int>());
        }
        return build_poset(std::move(ranks), std::move(covers));
    }
    catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, e.what());
    }
}

auto to_dot(const FacePoset& p) -> std::string
{
    std::ostringstream out;
    out << "digraph poset {\n  rankdir=BT;\n";
    for (int r = p.min_rank(); r <= p.max_rank() && p.size() > 0; ++r) {
        out << "  { rank=same;";
        for (FaceId f : p.faces_of_rank(r))
            out << " f" << f << ";";
        out << " }\n";
    }
    for (FaceId f = 0; f < p.size(); ++f)
        out << "  f" << f << " [label=\"" << f << ":" << p.rank(f) << "\"];\n";
    // Edges point upward so that rankdir=BT draws rank -1 at the bottom.
    for (auto [u, l] : p.covers())
        out << "  f" << l << " -> f" << u << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace polyprod

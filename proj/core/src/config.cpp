#include "aoi/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aoi/error.hpp"

namespace aoi {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::kConfig, what); }

const json& field(const json& obj, const char* name) {
  if (!obj.is_object()) config_error(std::string("expected an object holding \"") + name + "\"");
  auto it = obj.find(name);
  if (it == obj.end()) config_error(std::string("missing field \"") + name + "\"");
  return *it;
}

double number(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_number()) config_error(std::string("field \"") + name + "\" must be a number");
  return v.get<double>();
}

std::int64_t integer(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_number_integer()) config_error(std::string("field \"") + name + "\" must be an integer");
  return v.get<std::int64_t>();
}

InterUpdateDistribution distribution_from(const json& j) {
  const json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) config_error("distribution \"kind\" must be a string");
  const auto kind = kind_field.get<std::string>();
  // Parameter range errors surface as kInvalidParameter from the constructors.
  if (kind == "exponential") return Exponential(number(j, "rate"));
  if (kind == "rayleigh") return Rayleigh(number(j, "scale"));
  if (kind == "chisquare") {
    const auto k = integer(j, "k");
    if (k <= 0 || k > 1'000'000) config_error("chisquare k out of range");
    return ChiSquare(static_cast<int>(k));
  }
  if (kind == "beta") return Beta(number(j, "alpha"), number(j, "beta"));
  if (kind == "uniform") return Uniform(number(j, "a"), number(j, "b"));
  if (kind == "constant") return Constant(number(j, "value"));
  config_error("unknown distribution kind \"" + kind + "\"");
}

json distribution_json(const InterUpdateDistribution& dist) {
  return std::visit(Overloaded{
                        [](const Exponential& d) { return json{{"kind", "exponential"}, {"rate", d.rate}}; },
                        [](const Rayleigh& d) { return json{{"kind", "rayleigh"}, {"scale", d.scale}}; },
                        [](const ChiSquare& d) { return json{{"kind", "chisquare"}, {"k", d.dof}}; },
                        [](const Beta& d) { return json{{"kind", "beta"}, {"alpha", d.alpha}, {"beta", d.beta}}; },
                        [](const Uniform& d) { return json{{"kind", "uniform"}, {"a", d.a}, {"b", d.b}}; },
                        [](const Constant& d) { return json{{"kind", "constant"}, {"value", d.value}}; },
                    },
                    dist);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
}

NodeId node_field(const json& obj, const char* name) {
  const auto v = integer(obj, name);
  if (v < 0 || v > std::numeric_limits<NodeId>::max()) config_error(std::string("field \"") + name + "\" out of range");
  return static_cast<NodeId>(v);
}

}  // namespace

InterUpdateDistribution parse_distribution(std::string_view json_text) {
  return distribution_from(parse_json(json_text));
}

std::string distribution_to_json(const InterUpdateDistribution& dist) { return distribution_json(dist).dump(); }

NetworkDesc parse_network(std::string_view json_text) {
  const json root = parse_json(json_text);
  NetworkDesc desc;
  const auto nodes = integer(root, "nodes");
  if (nodes < 1) config_error("\"nodes\" must be at least 1");
  desc.node_count = static_cast<std::size_t>(nodes);
  const json& links = field(root, "links");
  if (!links.is_array()) config_error("\"links\" must be an array");
  for (std::size_t i = 0; i < links.size(); ++i) {
    const json& l = links[i];
    std::uint32_t priority = static_cast<std::uint32_t>(i);
    if (l.is_object() && l.contains("priority")) {
      const auto p = integer(l, "priority");
      if (p < 0) config_error("link priority must be nonnegative");
      priority = static_cast<std::uint32_t>(p);
    }
    desc.links.push_back(
        Link{node_field(l, "from"), node_field(l, "to"), distribution_from(field(l, "dist")), priority});
  }
  return desc;
}

std::string network_to_json(const NetworkDesc& desc) {
  json links = json::array();
  for (const Link& l : desc.links) {
    links.push_back(json{{"from", l.from}, {"to", l.to}, {"dist", distribution_json(l.dist)}, {"priority", l.priority}});
  }
  return json{{"nodes", desc.node_count}, {"links", links}}.dump();
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open network file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return Network(parse_network(text.str()));
}

std::uint64_t config_hash(const NetworkDesc& desc) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : network_to_json(desc)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace aoi

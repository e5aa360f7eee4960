#include "mpos/system.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mpos/error.hpp"

namespace mpos {

System::System(DigitSet primal, DigitSet dual, std::string label)
    : primal_(std::move(primal)),
      dual_(std::move(dual)),
      table_(primal_, dual_),
      label_(std::move(label)) {}

System System::canonical(const DilationMatrix& m, std::string label) {
  return System(canonical_digit_set(m), canonical_digit_set(m.transpose()), std::move(label));
}

namespace {

using nlohmann::json;

std::vector<IntVector> parse_digits(const json& j, const char* field) {
  if (!j.is_array()) throw Error(Errc::ParseError, std::string(field) + " must be an array");
  std::vector<IntVector> out;
  for (const auto& d : j) {
    if (d.is_number_integer()) {
      out.push_back(make_vector({d.get<long long>()}));
    } else if (d.is_array()) {
      IntVector v;
      for (const auto& x : d) {
        if (!x.is_number_integer())
          throw Error(Errc::ParseError, std::string(field) + " entries must be integers");
        v.emplace_back(x.get<long long>());
      }
      out.push_back(std::move(v));
    } else {
      throw Error(Errc::ParseError, std::string(field) + " entries must be integer arrays");
    }
  }
  return out;
}

}  // namespace

SystemConfig SystemConfig::parse(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(Errc::ParseError, "system file must hold a JSON object");
  if (!j.contains("matrix")) throw Error(Errc::ParseError, "missing field \"matrix\"");

  SystemConfig c;
  const json& mat = j.at("matrix");
  if (!mat.is_array() || mat.empty()) throw Error(Errc::ParseError, "\"matrix\" must be a non-empty array of rows");
  for (const auto& row : mat) {
    if (!row.is_array()) throw Error(Errc::ParseError, "\"matrix\" rows must be arrays");
    std::vector<long long> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw Error(Errc::ParseError, "\"matrix\" entries must be integers");
      r.push_back(x.get<long long>());
    }
    c.matrix.push_back(std::move(r));
  }
  if (j.contains("digits") && !j.at("digits").is_null()) c.digits = parse_digits(j.at("digits"), "digits");
  if (j.contains("dual_digits") && !j.at("dual_digits").is_null())
    c.dual_digits = parse_digits(j.at("dual_digits"), "dual_digits");
  if (j.contains("label")) {
    if (!j.at("label").is_string()) throw Error(Errc::ParseError, "\"label\" must be a string");
    c.label = j.at("label").get<std::string>();
  }
  return c;
}

SystemConfig SystemConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str());
}

System build_system(const SystemConfig& config) {
  const IntMatrix entries = IntMatrix::from_rows(config.matrix);
  if (!entries.square()) throw Error(Errc::InvalidArgument, "matrix must be square");
  const DilationMatrix m(entries);
  const DilationMatrix mt = m.transpose();
  DigitSet d = config.digits ? DigitSet::validate(m, *config.digits) : canonical_digit_set(m);
  DigitSet ds = config.dual_digits ? DigitSet::validate(mt, *config.dual_digits) : canonical_digit_set(mt);
  return System(std::move(d), std::move(ds), config.label);
}

}  // namespace mpos

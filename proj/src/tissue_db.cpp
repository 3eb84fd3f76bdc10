#include "vivochan/tissue_db.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "vivochan/errors.hpp"

namespace vivochan {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    // trim surrounding whitespace
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& text, int line_no, const char* field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    std::ostringstream msg;
    msg << "tissue database line " << line_no << ": cannot parse " << field
        << " from '" << text << "'";
    throw ParseError(msg.str());
  }
}

constexpr const char* kHeader =
    "tissue,eps_inf,d1,tau1,a1,d2,tau2,a2,d3,tau3,a3,d4,tau4,a4,sigma,fmin,fmax";

TissueDielectricSpec spec_from_json(const nlohmann::json& obj, std::size_t index) {
  if (!obj.is_object()) {
    std::ostringstream msg;
    msg << "tissue database record " << index << ": expected an object";
    throw ParseError(msg.str());
  }
  auto num = [&](const char* key, std::optional<double> fallback =
                                      std::nullopt) -> double {
    if (!obj.contains(key)) {
      if (fallback) return *fallback;
      std::ostringstream msg;
      msg << "tissue database record " << index << ": missing field '" << key << "'";
      throw ParseError(msg.str());
    }
    if (!obj.at(key).is_number()) {
      std::ostringstream msg;
      msg << "tissue database record " << index << ": field '" << key
          << "' is not a number";
      throw ParseError(msg.str());
    }
    return obj.at(key).get<double>();
  };

  TissueDielectricSpec spec;
  if (!obj.contains("tissue") || !obj.at("tissue").is_string()) {
    std::ostringstream msg;
    msg << "tissue database record " << index << ": missing string field 'tissue'";
    throw ParseError(msg.str());
  }
  spec.tissue_name = obj.at("tissue").get<std::string>();
  spec.eps_inf = num("eps_inf");
  const char* dkeys[4] = {"d1", "d2", "d3", "d4"};
  const char* tkeys[4] = {"tau1", "tau2", "tau3", "tau4"};
  const char* akeys[4] = {"a1", "a2", "a3", "a4"};
  for (int m = 0; m < 4; ++m) {
    spec.poles[m].delta_eps = num(dkeys[m]);
    spec.poles[m].tau_s = num(tkeys[m]);
    spec.poles[m].alpha = num(akeys[m]);
  }
  spec.sigma_ionic = num("sigma");
  spec.valid_min_hz = num("fmin", 10.0);
  spec.valid_max_hz = num("fmax", 20.0e9);
  spec.mass_density = num("rho", 0.0);
  return spec;
}

}  // namespace

void TissueDatabase::add(TissueDielectricSpec spec) {
  spec.validate();
  if (contains(spec.tissue_name))
    throw ParseError("duplicate tissue name '" + spec.tissue_name + "'");
  specs_.push_back(std::move(spec));
}

bool TissueDatabase::contains(std::string_view tissue_name) const {
  return std::any_of(specs_.begin(), specs_.end(),
                     [&](const auto& s) { return s.tissue_name == tissue_name; });
}

const TissueDielectricSpec& TissueDatabase::find(std::string_view tissue_name) const {
  for (const auto& spec : specs_)
    if (spec.tissue_name == tissue_name) return spec;
  std::ostringstream msg;
  msg << "unknown tissue '" << tissue_name << "'; available:";
  for (const auto& spec : specs_) msg << ' ' << spec.tissue_name;
  throw LookupError(msg.str());
}

std::vector<std::string> TissueDatabase::names() const {
  std::vector<std::string> out;
  out.reserve(specs_.size());
  for (const auto& spec : specs_) out.push_back(spec.tissue_name);
  return out;
}

TissueDatabase TissueDatabase::load_csv(std::istream& in) {
  TissueDatabase db;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (!header_seen) {
      // header row: first cell must be the literal column name
      if (fields.empty() || fields[0] != "tissue") {
        std::ostringstream msg;
        msg << "tissue database line " << line_no << ": expected header '"
            << kHeader << "[,rho]'";
        throw ParseError(msg.str());
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 17 && fields.size() != 18) {
      std::ostringstream msg;
      msg << "tissue database line " << line_no << ": expected 17 or 18 fields, got "
          << fields.size();
      throw ParseError(msg.str());
    }
    TissueDielectricSpec spec;
    spec.tissue_name = fields[0];
    spec.eps_inf = parse_number(fields[1], line_no, "eps_inf");
    for (int m = 0; m < 4; ++m) {
      spec.poles[m].delta_eps = parse_number(fields[2 + 3 * m], line_no, "delta_eps");
      spec.poles[m].tau_s = parse_number(fields[3 + 3 * m], line_no, "tau");
      spec.poles[m].alpha = parse_number(fields[4 + 3 * m], line_no, "alpha");
    }
    spec.sigma_ionic = parse_number(fields[14], line_no, "sigma");
    spec.valid_min_hz = fields[15].empty() ? 10.0
                                           : parse_number(fields[15], line_no, "fmin");
    spec.valid_max_hz = fields[16].empty() ? 20.0e9
                                           : parse_number(fields[16], line_no, "fmax");
    if (fields.size() == 18 && !fields[17].empty())
      spec.mass_density = parse_number(fields[17], line_no, "rho");
    db.add(std::move(spec));
  }
  return db;
}

TissueDatabase TissueDatabase::load_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("tissue database JSON: ") + e.what());
  }
  if (!doc.is_array())
    throw ParseError("tissue database JSON: expected an array of objects");
  TissueDatabase db;
  for (std::size_t i = 0; i < doc.size(); ++i) db.add(spec_from_json(doc[i], i));
  return db;
}

TissueDatabase TissueDatabase::load(std::istream& in) {
  // peek past whitespace to decide the format
  int c;
  while ((c = in.peek()) != EOF && (c == ' ' || c == '\t' || c == '\n' || c == '\r'))
    in.get();
  if (c == '[' || c == '{') return load_json(in);
  return load_csv(in);
}

TissueDatabase TissueDatabase::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open tissue database '" + path + "'");
  return load(in);
}

}  // namespace vivochan

#include "orient/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "orient/errors.hpp"

namespace orient {
namespace {

UnitVec3 unit_from_components(double x, double y, double z, const char* context) {
  const Vec3 v{x, y, z};
  if (norm(v) == 0.0) {
    throw FormatError(std::string(context) + ": zero mean direction");
  }
  return normalize(v);  // stored components may be rounded; renormalize
}

nlohmann::json mu_json(const UnitVec3& mu) { return nlohmann::json::array({mu.x, mu.y, mu.z}); }

void append_csv_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) {
      out.push_back(',');
    }
    out += format_double(v);
    first = false;
  }
  out.push_back('\n');
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void atomic_write_text(const std::filesystem::path& path, std::string_view text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw FormatError("cannot open for writing: " + tmp.string());
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
      throw FormatError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw FormatError("rename failed: " + path.string() + " (" + ec.message() + ")");
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot read: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

nlohmann::json fit_report_json(UsageType usage, const FitReport& fit) {
  const SphericalDirection dir = to_spherical(fit.params.mu);
  return nlohmann::json{
      {"usage", usage.str()},
      {"mu", mu_json(fit.params.mu)},
      {"kappa", fit.params.kappa},
      {"phi_deg", dir.phi_deg},
      {"theta_deg", dir.theta_deg},
      {"n_samples", fit.n},
      {"rbar", fit.rbar},
      {"log_likelihood", fit.log_likelihood},
  };
}

std::pair<UsageType, FitReport> fit_report_from_json(const nlohmann::json& j) {
  try {
    const UsageType usage = UsageType::from_string(j.at("usage").get<std::string>());
    const auto& mu = j.at("mu");
    FitReport fit;
    fit.params.mu = unit_from_components(mu.at(0).get<double>(), mu.at(1).get<double>(),
                                         mu.at(2).get<double>(), "model");
    fit.params.kappa = j.at("kappa").get<double>();
    if (!(fit.params.kappa >= 0.0) || !std::isfinite(fit.params.kappa)) {
      throw FormatError("model: kappa must be finite and >= 0");
    }
    fit.n = j.at("n_samples").get<std::size_t>();
    fit.rbar = j.value("rbar", 0.0);
    fit.log_likelihood = j.value("log_likelihood", 0.0);
    return {usage, fit};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid model document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid model document: ") + e.what());
  }
}

void write_fit_json(const std::filesystem::path& path, UsageType usage, const FitReport& fit) {
  atomic_write_text(path, fit_report_json(usage, fit).dump(2) + "\n");
}

std::pair<UsageType, FitReport> read_fit_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw FormatError("invalid JSON: " + path.string());
  }
  return fit_report_from_json(j);
}

nlohmann::json mixture_json(const MixtureModel& model) {
  nlohmann::json components = nlohmann::json::array();
  for (const MixtureComponent& c : model.components()) {
    components.push_back({
        {"usage", c.usage.str()},
        {"mu", mu_json(c.params.mu)},
        {"kappa", c.params.kappa},
        {"weight", c.weight},
        {"n_samples", c.n_samples},
    });
  }
  return nlohmann::json{{"components", components}};
}

MixtureModel mixture_from_json(const nlohmann::json& j) {
  try {
    std::vector<MixtureComponent> components;
    for (const auto& cj : j.at("components")) {
      MixtureComponent c;
      c.usage = UsageType::from_string(cj.at("usage").get<std::string>());
      const auto& mu = cj.at("mu");
      c.params.mu = unit_from_components(mu.at(0).get<double>(), mu.at(1).get<double>(),
                                         mu.at(2).get<double>(), "mixture component");
      c.params.kappa = cj.at("kappa").get<double>();
      c.weight = cj.at("weight").get<double>();
      if (c.weight < 0.0) {
        throw FormatError("mixture component: negative weight");
      }
      c.n_samples = cj.value("n_samples", std::size_t{0});
      components.push_back(c);
    }
    return MixtureModel(std::move(components));  // constructor renormalizes
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid mixture document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid mixture document: ") + e.what());
  }
}

void write_mixture_json(const std::filesystem::path& path, const MixtureModel& model) {
  atomic_write_text(path, mixture_json(model).dump(2) + "\n");
}

MixtureModel read_mixture_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw FormatError("invalid JSON: " + path.string());
  }
  return mixture_from_json(j);
}

void write_orientations_csv(const std::filesystem::path& path, const OrientationSet& set) {
  std::string out = "x,y,z\n";
  for (const UnitVec3& v : set.vectors) {
    append_csv_row(out, {v.x, v.y, v.z});
  }
  atomic_write_text(path, out);
}

std::vector<UnitVec3> read_orientations_csv(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  std::vector<UnitVec3> vectors;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line == "x,y,z") continue;
    double v[3];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int k = 0; k < 3; ++k) {
      auto [ptr, ec] = std::from_chars(p, end, v[k]);
      if (ec != std::errc() || (k < 2 && (ptr == end || *ptr != ','))) {
        throw FormatError(path.string() + ":" + std::to_string(line_no) +
                          ": expected x,y,z row");
      }
      p = ptr + (k < 2 ? 1 : 0);
    }
    const double n = norm(Vec3{v[0], v[1], v[2]});
    if (std::abs(n - 1.0) > 1e-6) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": orientation row is not unit length");
    }
    // Rows written by this tool round-trip exactly; only renormalize when a
    // hand-edited row actually needs it.
    if (std::abs(n - 1.0) > 1e-12) {
      vectors.push_back(UnitVec3::unchecked(v[0] / n, v[1] / n, v[2] / n));
    } else {
      vectors.push_back(UnitVec3::unchecked(v[0], v[1], v[2]));
    }
  }
  return vectors;
}

void write_qq_csv(const std::filesystem::path& path, const QQSeries& series) {
  std::string out = "tau,empirical,reference\n";
  for (std::size_t i = 0; i < series.taus.size(); ++i) {
    append_csv_row(out, {series.taus[i], series.empirical[i], series.reference[i]});
  }
  atomic_write_text(path, out);
}

void write_grid_csv(const std::filesystem::path& path, const DensityGrid& grid) {
  std::string out = "phi_deg,theta_deg,mollweide_x,mollweide_y,density\n";
  for (const DensityCell& cell : grid.cells) {
    append_csv_row(out,
                   {cell.phi_deg, cell.theta_deg, cell.mollweide_x, cell.mollweide_y,
                    cell.density});
  }
  atomic_write_text(path, out);
}

void write_summary_csv(const std::filesystem::path& path, std::span<const SummaryRow> rows) {
  std::string out = "usage,phi_deg,theta_deg,kappa,inv_kappa\n";
  for (const SummaryRow& row : rows) {
    out += row.usage.str();
    out.push_back(',');
    out += format_double(row.phi_deg);
    out.push_back(',');
    out += format_double(row.theta_deg);
    out.push_back(',');
    out += format_double(row.kappa);
    out.push_back(',');
    out += format_double(row.inv_kappa);
    out.push_back('\n');
  }
  atomic_write_text(path, out);
}

void write_conditions_csv(const std::filesystem::path& path, std::span<const UsageType> usages) {
  const std::span<const TestCondition> conditions = test_conditions();
  std::string out = "usage,index,name,comment\n";
  for (const UsageType& usage : usages) {
    for (int index : usage_to_test_conditions(usage)) {
      const TestCondition& c = conditions[static_cast<std::size_t>(index - 1)];
      out += usage.str();
      out.push_back(',');
      out += std::to_string(c.index);
      out += ",\"";
      out += c.name;
      out += "\",\"";
      out += c.comment;
      out += "\"\n";
    }
  }
  atomic_write_text(path, out);
}

void write_samples_csv(const std::filesystem::path& path,
                       std::span<const LabeledSample> samples) {
  std::string out = "usage,x,y,z\n";
  for (const LabeledSample& s : samples) {
    out += s.usage.str();
    out.push_back(',');
    out += format_double(s.rho.x);
    out.push_back(',');
    out += format_double(s.rho.y);
    out.push_back(',');
    out += format_double(s.rho.z);
    out.push_back('\n');
  }
  atomic_write_text(path, out);
}

void write_rejects_csv(const std::filesystem::path& path,
                       std::span<const RejectedRow> rejects) {
  std::string out = "line,reason\n";
  for (const RejectedRow& r : rejects) {
    out += std::to_string(r.line);
    out += ",\"";
    out += r.reason;
    out += "\"\n";
  }
  atomic_write_text(path, out);
}

}  // namespace orient

#include "wavecoeff/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

#include "wavecoeff/cli/descriptors.hpp"
#include "wavecoeff/window.hpp"

namespace wavecoeff::cli {

namespace {

namespace pt = boost::property_tree;

// Line of `key` inside `[section]`, for diagnostics.
int locate(const std::string& text, const std::string& section, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  bool in_section = false;
  while (std::getline(in, line)) {
    ++n;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#' || t.front() == ';') continue;
    if (t.front() == '[') {
      in_section = t.size() >= 2 && trim(t.substr(1, t.size() - 2)) == section;
      continue;
    }
    if (in_section && key.empty()) return n;
    const auto eq = t.find('=');
    if (in_section && eq != std::string_view::npos && trim(t.substr(0, eq)) == key) return n;
  }
  return 0;
}

struct Reader {
  const std::string& text;
  std::string section;

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError("[" + section + "] " + key + ": " + msg, locate(text, section, key));
  }

  template <class Fn>
  auto guarded(const std::string& key, Fn&& fn) const {
    try {
      return fn();
    } catch (const ConfigError& e) {
      fail(key, e.what());
    }
  }

  double number(const std::string& key, const std::string& v) const {
    return guarded(key, [&] { return parse_number(v); });
  }

  int integer(const std::string& key, const std::string& v) const {
    const double d = number(key, v);
    if (d != static_cast<int>(d)) fail(key, "expected an integer, got '" + v + "'");
    return static_cast<int>(d);
  }

  std::uint64_t unsigned_integer(const std::string& key, const std::string& v) const {
    const auto t = trim(v);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
      fail(key, "expected a nonnegative integer, got '" + v + "'");
    return out;
  }

  AutoValue auto_number(const std::string& key, const std::string& v) const {
    if (trim(v) == "auto") return {};
    return {number(key, v)};
  }

  std::optional<double> optional_number(const std::string& key, const std::string& v) const {
    if (trim(v) == "auto") return std::nullopt;
    return number(key, v);
  }

  bool boolean(const std::string& key, const std::string& v) const {
    const auto t = trim(v);
    if (t == "true" || t == "on" || t == "yes" || t == "1") return true;
    if (t == "false" || t == "off" || t == "no" || t == "0") return false;
    fail(key, "expected true or false, got '" + v + "'");
  }

  std::string profile(const std::string& key, const std::string& v) const {
    guarded(key, [&] { return parse_profile(v); });
    return std::string(trim(v));
  }

  std::string window(const std::string& key, const std::string& v) const {
    try {
      ObservationWindow::parse(std::string(trim(v)));
    } catch (const Error& e) {
      fail(key, e.what());
    }
    return std::string(trim(v));
  }
};

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::single: return "single";
    case Mode::sweep: return "sweep";
    case Mode::geometry: return "geometry";
  }
  return "single";
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.message(), static_cast<int>(e.line()));
  }

  ExperimentConfig cfg = std::move(base);
  bool cases_replaced = false;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("key '" + section + "' outside a section", locate(text, "", section));
    Reader r{text, section};
    const bool is_case = section == "case" || section.starts_with("case ");
    if (is_case && !cases_replaced) {
      cfg.cases.clear();
      cases_replaced = true;
    }
    SweepCase sc;
    if (is_case) sc.name = std::string(trim(std::string_view(section).substr(4)));

    for (const auto& [key, node] : body) {
      const std::string v = node.data();
      if (section == "experiment") {
        if (key == "mode") {
          const auto m = trim(v);
          if (m == "single") cfg.mode = Mode::single;
          else if (m == "sweep") cfg.mode = Mode::sweep;
          else if (m == "geometry") cfg.mode = Mode::geometry;
          else r.fail(key, "expected single, sweep or geometry");
        } else {
          r.fail(key, "unknown key");
        }
      } else if (section == "problem") {
        if (key == "n_cells") cfg.n_cells = r.integer(key, v);
        else if (key == "n_steps") cfg.n_steps = r.integer(key, v);
        else if (key == "T") cfg.t_max = r.number(key, v);
        else if (key == "source") {
          r.guarded(key, [&] { return parse_source(v); });
          cfg.source = std::string(trim(v));
        } else if (key == "initial_value") cfg.initial_value = r.profile(key, v);
        else if (key == "p_true") cfg.p_true = r.profile(key, v);
        else r.fail(key, "unknown key");
      } else if (section == "observation") {
        if (key == "window") cfg.window = r.window(key, v);
        else if (key == "delta0") cfg.delta0 = r.number(key, v);
        else if (key == "seed") cfg.seed = r.unsigned_integer(key, v);
        else r.fail(key, "unknown key");
      } else if (section == "iteration") {
        if (key == "K") cfg.K = r.auto_number(key, v);
        else if (key == "alpha") cfg.alpha = r.auto_number(key, v);
        else if (key == "epsilon") cfg.epsilon = r.auto_number(key, v);
        else if (key == "max_iter") cfg.max_iter = r.integer(key, v);
        else if (key == "initial_guess") cfg.initial_guess = r.profile(key, v);
        else if (key == "boundary_left") cfg.boundary_left = r.optional_number(key, v);
        else if (key == "boundary_right") cfg.boundary_right = r.optional_number(key, v);
        else if (key == "kappa1") cfg.kappa1 = r.number(key, v);
        else if (key == "M1") cfg.M1 = r.number(key, v);
        else if (key == "clamp") cfg.clamp = r.boolean(key, v);
        else r.fail(key, "unknown key");
      } else if (section == "diagnostics") {
        if (key == "surrogate_samples") cfg.surrogate_samples = r.integer(key, v);
        else r.fail(key, "unknown key");
      } else if (section == "geometry") {
        if (key == "weight") {
          const auto w = trim(v);
          if (w != "canonical") r.profile(key, v);
          cfg.weight = std::string(w);
        } else if (key == "x0") cfg.x0 = r.number(key, v);
        else if (key == "beta") cfg.beta = r.number(key, v);
        else if (key == "lambda") cfg.lambda = r.number(key, v);
        else if (key == "delta") cfg.level = r.number(key, v);
        else if (key == "T") cfg.geometry_t_max = r.optional_number(key, v);
        else if (key == "window") {
          if (trim(v) == "auto") cfg.geometry_window.reset();
          else cfg.geometry_window = r.window(key, v);
        } else r.fail(key, "unknown key");
      } else if (section == "output") {
        if (key == "dir") cfg.out_dir = std::string(trim(v));
        else if (key == "timings") {
          const auto t = trim(v);
          if (t == "wall") cfg.timings = Timings::wall;
          else if (t == "none") cfg.timings = Timings::none;
          else r.fail(key, "expected wall or none");
        } else r.fail(key, "unknown key");
      } else if (is_case) {
        if (key == "window") sc.window = r.window(key, v);
        else if (key == "delta0") sc.delta0 = r.number(key, v);
        else if (key == "K") sc.K = r.auto_number(key, v);
        else if (key == "alpha") sc.alpha = r.auto_number(key, v);
        else if (key == "epsilon") sc.epsilon = r.auto_number(key, v);
        else if (key == "p_true") sc.p_true = r.profile(key, v);
        else if (key == "seed") sc.seed = r.unsigned_integer(key, v);
        else r.fail(key, "unknown key");
      } else {
        throw ConfigError("unknown section [" + section + "]", locate(text, section, ""));
      }
    }
    if (is_case) cfg.cases.push_back(std::move(sc));
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig cfg;
  if (name == "table1a") {
    cfg.p_true = "paper_a";
  } else if (name == "table1b") {
    cfg.p_true = "paper_b";
  } else if (name == "table1c") {
    cfg.p_true = "paper_c";
  } else if (name == "table2") {
    cfg.mode = Mode::sweep;
    cfg.p_true = "paper_a";
    struct Row {
      const char* name;
      const char* window;
      double delta0, K, alpha;
    };
    const Row rows[] = {
        {"window 0.4", "complement:0.2,0.8", 0.01, 4e-5, 1e-7},
        {"window 0.2", "complement:0.1,0.9", 0.01, 2e-5, 1e-7},
        {"window 0.1", "complement:0.05,0.95", 0.01, 1e-5, 1e-7},
        {"noise 0", "complement:0.1,0.9", 0.0, 2e-5, 1e-9},
        {"noise 2", "complement:0.1,0.9", 0.02, 2e-5, 2e-7},
        {"noise 4", "complement:0.1,0.9", 0.04, 2e-5, 4e-7},
        {"noise 8", "complement:0.1,0.9", 0.08, 2e-5, 8e-7},
    };
    for (const auto& row : rows) {
      SweepCase sc;
      sc.name = row.name;
      sc.window = row.window;
      sc.delta0 = row.delta0;
      sc.K = AutoValue{row.K};
      sc.alpha = AutoValue{row.alpha};
      cfg.cases.push_back(sc);
    }
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return cfg;
}

namespace {

std::string auto_text(const AutoValue& v) { return v.value ? format_number(*v.value) : "auto"; }

}  // namespace

std::string render_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[experiment]\nmode = " << to_string(c.mode) << "\n\n";
  os << "[problem]\n"
     << "n_cells = " << c.n_cells << "\n"
     << "n_steps = " << c.n_steps << "\n"
     << "T = " << format_number(c.t_max) << "\n"
     << "source = " << c.source << "\n"
     << "initial_value = " << c.initial_value << "\n"
     << "p_true = " << c.p_true << "\n\n";
  os << "[observation]\n"
     << "window = " << c.window << "\n"
     << "delta0 = " << format_number(c.delta0) << "\n"
     << "seed = " << c.seed << "\n\n";
  os << "[iteration]\n"
     << "K = " << auto_text(c.K) << "\n"
     << "alpha = " << auto_text(c.alpha) << "\n"
     << "epsilon = " << auto_text(c.epsilon) << "\n"
     << "max_iter = " << c.max_iter << "\n"
     << "initial_guess = " << c.initial_guess << "\n"
     << "boundary_left = " << (c.boundary_left ? format_number(*c.boundary_left) : "auto") << "\n"
     << "boundary_right = " << (c.boundary_right ? format_number(*c.boundary_right) : "auto") << "\n"
     << "kappa1 = " << format_number(c.kappa1) << "\n"
     << "M1 = " << format_number(c.M1) << "\n"
     << "clamp = " << (c.clamp ? "true" : "false") << "\n\n";
  os << "[diagnostics]\nsurrogate_samples = " << c.surrogate_samples << "\n\n";
  os << "[geometry]\n"
     << "weight = " << c.weight << "\n"
     << "x0 = " << format_number(c.x0) << "\n"
     << "beta = " << format_number(c.beta) << "\n"
     << "lambda = " << format_number(c.lambda) << "\n"
     << "delta = " << format_number(c.level) << "\n"
     << "T = " << (c.geometry_t_max ? format_number(*c.geometry_t_max) : "auto") << "\n"
     << "window = " << c.geometry_window.value_or("auto") << "\n\n";
  os << "[output]\n"
     << "dir = " << c.out_dir << "\n"
     << "timings = " << (c.timings == Timings::wall ? "wall" : "none") << "\n";
  for (const auto& sc : c.cases) {
    os << "\n[case" << (sc.name.empty() ? "" : " " + sc.name) << "]\n";
    if (sc.window) os << "window = " << *sc.window << "\n";
    if (sc.delta0) os << "delta0 = " << format_number(*sc.delta0) << "\n";
    if (sc.K) os << "K = " << auto_text(*sc.K) << "\n";
    if (sc.alpha) os << "alpha = " << auto_text(*sc.alpha) << "\n";
    if (sc.epsilon) os << "epsilon = " << auto_text(*sc.epsilon) << "\n";
    if (sc.p_true) os << "p_true = " << *sc.p_true << "\n";
    if (sc.seed) os << "seed = " << *sc.seed << "\n";
  }
  return os.str();
}

}  // namespace wavecoeff::cli

#include "ardlkit/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ardlkit/errors.hpp"

namespace ardlkit::report {

using nlohmann::json;
using pipeline::coef_row;
using pipeline::diag_row;
using pipeline::model_report;
using pipeline::path_point;
using pipeline::run_report;
using pipeline::stability_block;
using pipeline::ur_entry;

namespace {

json coef_to_json(const coef_row& c) {
  return json{{"name", c.name}, {"coef", c.coef},   {"se", c.se},
              {"t", c.tstat},   {"p", c.pvalue},    {"stars", c.stars}};
}

coef_row coef_from_json(const json& j) {
  coef_row c;
  c.name = j.at("name").get<std::string>();
  c.coef = j.at("coef").get<double>();
  c.se = j.at("se").get<double>();
  c.tstat = j.at("t").get<double>();
  c.pvalue = j.at("p").get<double>();
  c.stars = j.at("stars").get<std::string>();
  return c;
}

json stability_to_json(const stability_block& s) {
  json pts = json::array();
  for (const auto& p : s.points)
    pts.push_back(json{{"year", p.year}, {"value", p.value}, {"lower", p.lower},
                       {"upper", p.upper}});
  return json{{"kind", s.kind}, {"stable", s.stable}, {"path", pts}};
}

stability_block stability_from_json(const json& j) {
  stability_block s;
  s.kind = j.at("kind").get<std::string>();
  s.stable = j.at("stable").get<bool>();
  for (const auto& pj : j.at("path")) {
    path_point p;
    p.year = pj.at("year").get<int>();
    p.value = pj.at("value").get<double>();
    p.lower = pj.at("lower").get<double>();
    p.upper = pj.at("upper").get<double>();
    s.points.push_back(p);
  }
  return s;
}

json model_to_json(const model_report& m) {
  json j;
  j["id"] = m.def.id;
  j["name"] = m.def.name;
  j["dep"] = m.def.dep;
  j["regs"] = m.def.regs;
  j["ok"] = m.ok;
  j["error"] = m.error;
  if (!m.ok) return j;

  j["spec"] = json{{"p", m.p},
                   {"q", m.q},
                   {"label", m.selected_spec},
                   {"criterion", m.criterion_name},
                   {"criterion_value", m.criterion_value}};
  json cvs = json::array();
  for (const auto& row : m.bounds_cvs)
    cvs.push_back(json{{"level", row.level}, {"i0", row.i0}, {"i1", row.i1}});
  j["bounds"] = json{{"F", m.fstat},
                     {"k", m.bounds_k},
                     {"m", m.bounds_m},
                     {"case", m.bounds_case_name},
                     {"verdict_5pct", m.bounds_verdict},
                     {"stars", m.bounds_stars},
                     {"critical_values", cvs}};
  j["sample"] = json{{"first_year", m.sample_first},
                     {"last_year", m.sample_last},
                     {"T", m.effective_T}};
  json sr = json::array();
  for (const auto& c : m.shortrun) sr.push_back(coef_to_json(c));
  j["short_run"] = sr;
  json lr = json::array();
  for (const auto& c : m.longrun) lr.push_back(coef_to_json(c));
  j["long_run"] = lr;
  j["ect"] = json{{"coef", m.ect},
                  {"se", m.ect_se},
                  {"stable_adjustment", m.ect_stable_adjustment}};
  json diags = json::array();
  for (const auto& d : m.diagnostics)
    diags.push_back(json{{"name", d.name}, {"stat", d.stat}, {"df1", d.df1}, {"df2", d.df2},
                         {"p", d.pvalue}});
  j["diagnostics"] = diags;
  j["stability"] = json::array({stability_to_json(m.cusum), stability_to_json(m.cusumsq)});
  return j;
}

model_report model_from_json(const json& j) {
  model_report m;
  m.def.id = j.at("id").get<int>();
  m.def.name = j.at("name").get<std::string>();
  m.def.dep = j.at("dep").get<std::string>();
  m.def.regs = j.at("regs").get<std::vector<std::string>>();
  m.ok = j.at("ok").get<bool>();
  m.error = j.at("error").get<std::string>();
  if (!m.ok) return m;

  const auto& spec = j.at("spec");
  m.p = spec.at("p").get<int>();
  m.q = spec.at("q").get<std::vector<int>>();
  m.selected_spec = spec.at("label").get<std::string>();
  m.criterion_name = spec.at("criterion").get<std::string>();
  m.criterion_value = spec.at("criterion_value").get<double>();

  const auto& b = j.at("bounds");
  m.fstat = b.at("F").get<double>();
  m.bounds_k = b.at("k").get<int>();
  m.bounds_m = b.at("m").get<int>();
  m.bounds_case_name = b.at("case").get<std::string>();
  m.bounds_verdict = b.at("verdict_5pct").get<std::string>();
  m.bounds_stars = b.at("stars").get<std::string>();
  const auto& cvs = b.at("critical_values");
  for (size_t i = 0; i < 4 && i < cvs.size(); ++i) {
    m.bounds_cvs[i].level = cvs[i].at("level").get<double>();
    m.bounds_cvs[i].i0 = cvs[i].at("i0").get<double>();
    m.bounds_cvs[i].i1 = cvs[i].at("i1").get<double>();
  }

  const auto& sample = j.at("sample");
  m.sample_first = sample.at("first_year").get<int>();
  m.sample_last = sample.at("last_year").get<int>();
  m.effective_T = sample.at("T").get<int>();

  for (const auto& c : j.at("short_run")) m.shortrun.push_back(coef_from_json(c));
  for (const auto& c : j.at("long_run")) m.longrun.push_back(coef_from_json(c));
  const auto& ect = j.at("ect");
  m.ect = ect.at("coef").get<double>();
  m.ect_se = ect.at("se").get<double>();
  m.ect_stable_adjustment = ect.at("stable_adjustment").get<bool>();
  for (const auto& dj : j.at("diagnostics")) {
    diag_row d;
    d.name = dj.at("name").get<std::string>();
    d.stat = dj.at("stat").get<double>();
    d.df1 = dj.at("df1").get<int>();
    d.df2 = dj.at("df2").get<int>();
    d.pvalue = dj.at("p").get<double>();
    m.diagnostics.push_back(d);
  }
  const auto& st = j.at("stability");
  m.cusum = stability_from_json(st.at(0));
  m.cusumsq = stability_from_json(st.at(1));
  return m;
}

}  // namespace

std::string to_json(const run_report& rep) {
  json j;
  j["toolkit"] = json{{"name", "ardlkit"}, {"version", rep.version}};
  j["seed"] = rep.seed;
  j["config"] = rep.config_echo;
  json urs = json::array();
  for (const auto& e : rep.unit_roots)
    urs.push_back(json{{"var", e.var},
                       {"diff", e.diff_order},
                       {"det", e.det},
                       {"test", e.test},
                       {"stat", e.stat},
                       {"order", e.order},
                       {"cv1", e.cv1},
                       {"cv5", e.cv5},
                       {"cv10", e.cv10},
                       {"stars", e.stars}});
  j["unit_roots"] = urs;
  json models = json::array();
  for (const auto& m : rep.models) models.push_back(model_to_json(m));
  j["models"] = models;
  return j.dump(2) + "\n";
}

run_report from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::parse, std::string("report JSON: ") + e.what());
  }
  try {
    run_report rep;
    rep.version = j.at("toolkit").at("version").get<std::string>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.config_echo = j.at("config").get<std::string>();
    for (const auto& ej : j.at("unit_roots")) {
      ur_entry e;
      e.var = ej.at("var").get<std::string>();
      e.diff_order = ej.at("diff").get<int>();
      e.det = ej.at("det").get<std::string>();
      e.test = ej.at("test").get<std::string>();
      e.stat = ej.at("stat").get<double>();
      e.order = ej.at("order").get<int>();
      e.cv1 = ej.at("cv1").get<double>();
      e.cv5 = ej.at("cv5").get<double>();
      e.cv10 = ej.at("cv10").get<double>();
      e.stars = ej.at("stars").get<std::string>();
      rep.unit_roots.push_back(e);
    }
    for (const auto& mj : j.at("models")) rep.models.push_back(model_from_json(mj));
    return rep;
  } catch (const json::exception& e) {
    fail(errc::schema, std::string("report JSON: ") + e.what());
  }
}

run_report load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::schema, "cannot open report file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

namespace {

std::string fmt(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

std::string pad(const std::string& s, size_t w, bool left = true) {
  if (s.size() >= w) return s;
  const std::string fill(w - s.size(), ' ');
  return left ? s + fill : fill + s;
}

void coef_table(std::ostringstream& out, const std::string& title,
                const std::vector<coef_row>& rows) {
  out << title << "\n";
  out << "  " << pad("term", 16) << pad("coef", 12, false) << pad("se", 12, false)
      << pad("t", 10, false) << pad("p", 10, false) << "  sig\n";
  for (const auto& c : rows)
    out << "  " << pad(c.name, 16) << pad(fmt(c.coef), 12, false) << pad(fmt(c.se), 12, false)
        << pad(fmt(c.tstat, 2), 10, false) << pad(fmt(c.pvalue), 10, false) << "  " << c.stars
        << "\n";
}

}  // namespace

std::string to_text(const run_report& rep) {
  std::ostringstream out;
  out << "ardlkit " << rep.version << " -- ARDL bounds-testing replication report\n";
  out << "seed: " << rep.seed << "\n\n";

  // --- Table 2 analogue -----------------------------------------------------
  out << "== Unit root tests (t-statistics; ADF order = chosen lag, PP order = bandwidth) ==\n";
  for (const char* det : {"constant", "constant_trend"}) {
    out << "\n-- deterministic: " << det << " --\n";
    out << "  " << pad("variable", 10) << pad("ADF level", 14, false)
        << pad("ADF 1st diff", 16, false) << pad("PP level", 14, false)
        << pad("PP 1st diff", 16, false) << "\n";
    std::vector<std::string> vars;
    for (const auto& e : rep.unit_roots)
      if (std::find(vars.begin(), vars.end(), e.var) == vars.end()) vars.push_back(e.var);
    for (const auto& var : vars) {
      auto cell = [&](const std::string& test, int diff) -> std::string {
        for (const auto& e : rep.unit_roots)
          if (e.var == var && e.det == det && e.test == test && e.diff_order == diff)
            return fmt(e.stat) + e.stars;
        return "-";
      };
      out << "  " << pad(var, 10) << pad(cell("ADF", 0), 14, false)
          << pad(cell("ADF", 1), 16, false) << pad(cell("PP", 0), 14, false)
          << pad(cell("PP", 1), 16, false) << "\n";
    }
  }

  // --- Table 3 analogue -----------------------------------------------------
  out << "\n== Bounds cointegration tests ==\n";
  out << "  " << pad("model", 10) << pad("spec", 16) << pad("F-stat", 12, false)
      << pad("verdict(5%)", 18, false) << "\n";
  for (const auto& m : rep.models) {
    if (!m.ok) {
      out << "  " << pad(m.def.name, 10) << "aborted: " << m.error << "\n";
      continue;
    }
    out << "  " << pad(m.def.name, 10) << pad(m.selected_spec, 16)
        << pad(fmt(m.fstat) + m.bounds_stars, 12, false) << pad(m.bounds_verdict, 18, false)
        << "\n";
  }
  for (const auto& m : rep.models)
    if (m.ok) {
      out << "  critical values (case " << m.bounds_case_name << ", k = " << m.bounds_k
          << "):";
      for (const auto& row : m.bounds_cvs)
        out << "  " << fmt(row.level * 100, 1) << "%: " << fmt(row.i0, 2) << "/"
            << fmt(row.i1, 2);
      out << "\n";
      break;
    }

  // --- Table 4 analogue -----------------------------------------------------
  for (const auto& m : rep.models) {
    out << "\n== " << m.def.name << ": " << m.def.dep << " ~ ";
    for (size_t i = 0; i < m.def.regs.size(); ++i)
      out << (i ? ", " : "") << m.def.regs[i];
    out << " ==\n";
    if (!m.ok) {
      out << "  aborted: " << m.error << "\n";
      continue;
    }
    out << "  selected spec (" << m.criterion_name << "): " << m.selected_spec << ", sample "
        << m.sample_first << "-" << m.sample_last << " (T = " << m.effective_T << ")\n";
    out << "  bounds F = " << fmt(m.fstat) << m.bounds_stars << " (case " << m.bounds_case_name
        << ", k = " << m.bounds_k << ") -> " << m.bounds_verdict << " at 5%\n\n";
    coef_table(out, "  short-run (error-correction form, dep d(" + m.def.dep + "))",
               m.shortrun);
    out << "\n";
    coef_table(out, "  long-run levels relationship", m.longrun);
    out << "\n  ECT(-1) = " << fmt(m.ect) << " (se " << fmt(m.ect_se) << ") -- "
        << (m.ect_stable_adjustment ? "stable adjustment" : "adjustment outside (-2, 0)")
        << "\n";
    out << "\n  diagnostics\n";
    out << "  " << pad("test", 44) << pad("stat", 10, false) << pad("df", 10, false)
        << pad("p", 10, false) << "\n";
    for (const auto& d : m.diagnostics) {
      const std::string df = d.df2 > 0
                                 ? "(" + std::to_string(d.df1) + "," + std::to_string(d.df2) + ")"
                                 : std::to_string(d.df1);
      out << "  " << pad(d.name, 44) << pad(fmt(d.stat), 10, false) << pad(df, 10, false)
          << pad(fmt(d.pvalue), 10, false) << "\n";
    }
    out << "  " << pad("CUSUM", 44) << (m.cusum.stable ? "Stable" : "Unstable") << "\n";
    out << "  " << pad("CUSUMSQ", 44) << (m.cusumsq.stable ? "Stable" : "Unstable") << "\n";
  }
  out << "\nNote: ***, **, * denote significance at the 1%, 5%, and 10% level.\n";
  return out.str();
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(errc::parameter, "cannot write '" + p.string() + "'");
  out << content;
  if (!out) fail(errc::parameter, "write failed for '" + p.string() + "'");
}

std::string plot_csv(const stability_block& s) {
  std::ostringstream out;
  out << "year,path,lower,upper\n";
  char buf[160];
  for (const auto& p : s.points) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", p.year, p.value, p.lower, p.upper);
    out << buf;
  }
  return out.str();
}

}  // namespace

void write_files(const run_report& rep, const std::string& out_dir,
                 const std::string& plots_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) fail(errc::parameter, "cannot create output directory '" + out_dir + "'");
  write_file(fs::path(out_dir) / "report.json", to_json(rep));
  write_file(fs::path(out_dir) / "report.txt", to_text(rep));
  if (!plots_dir.empty()) {
    fs::create_directories(plots_dir, ec);
    if (ec) fail(errc::parameter, "cannot create plots directory '" + plots_dir + "'");
    for (const auto& m : rep.models) {
      if (!m.ok) continue;
      const std::string tag = "model" + std::to_string(m.def.id);
      write_file(fs::path(plots_dir) / (tag + "_cusum.csv"), plot_csv(m.cusum));
      write_file(fs::path(plots_dir) / (tag + "_cusumsq.csv"), plot_csv(m.cusumsq));
    }
  }
}

}  // namespace ardlkit::report

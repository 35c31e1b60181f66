#include "ardlkit/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "ardlkit/diagnostics.hpp"
#include "ardlkit/errors.hpp"

namespace ardlkit::pipeline {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    fail(errc::schema, "config key '" + key + "': not an integer: '" + v + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    fail(errc::schema, "config key '" + key + "': not a non-negative integer: '" + v + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    fail(errc::schema, "config key '" + key + "': not a number: '" + v + "'");
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

tsdata::transform_op parse_transform(const std::string& key, const std::string& v) {
  if (v == "identity") return tsdata::transform_op::identity();
  if (v == "log") return tsdata::transform_op::log();
  if (v == "diff") return tsdata::transform_op::diff();
  const auto colon = v.find(':');
  if (colon != std::string::npos) {
    const std::string head = v.substr(0, colon), arg = v.substr(colon + 1);
    if (head == "log_shift") return tsdata::transform_op::log_shift(parse_real(key, arg));
    if (head == "lag") return tsdata::transform_op::lag(parse_int(key, arg));
  }
  fail(errc::schema, "config key '" + key + "': unknown transform '" + v +
                         "' (identity | log | log_shift:<c> | diff | lag:<k>)");
}

unitroot::lag_selection parse_ur_lags(const std::string& key, const std::string& v) {
  if (v == "aic") return unitroot::lag_selection::aic();
  if (v == "sic") return unitroot::lag_selection::sic();
  const auto colon = v.find(':');
  if (colon != std::string::npos) {
    const std::string head = v.substr(0, colon);
    const int arg = parse_int(key, v.substr(colon + 1));
    if (head == "aic") return unitroot::lag_selection::aic(arg);
    if (head == "sic") return unitroot::lag_selection::sic(arg);
    if (head == "fixed") return unitroot::lag_selection::fixed(arg);
  }
  fail(errc::schema, "config key '" + key + "': unknown lag rule '" + v +
                         "' (aic[:pmax] | sic[:pmax] | fixed:<p>)");
}

}  // namespace

run_config parse_config_text(const std::string& text) {
  run_config cfg;
  cfg.echo = text;

  std::map<int, model_def> models;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  auto model_slot = [&](const std::string& key, int lineno_) -> model_def& {
    // key is "model<N>"
    const int id = parse_int(key, key.substr(5));
    if (id < 1)
      fail(errc::schema, "config line " + std::to_string(lineno_) + ": model id must be >= 1");
    auto& slot = models[id];
    slot.id = id;
    return slot;
  };

  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      fail(errc::schema,
           "config line " + std::to_string(lineno) + ": expected 'key = value', got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key.empty())
      fail(errc::schema, "config line " + std::to_string(lineno) + ": empty key");
    if (val.empty())
      fail(errc::schema, "config line " + std::to_string(lineno) + ": empty value for key '" +
                             key + "'");
    if (!seen.insert(key).second)
      fail(errc::schema, "config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");

    if (key == "input") {
      cfg.input_path = val;
    } else if (key == "seed") {
      cfg.seed = parse_u64(key, val);
    } else if (key == "pmax") {
      cfg.pmax = parse_int(key, val);
      if (cfg.pmax < 1) fail(errc::schema, "config key 'pmax': must be >= 1");
    } else if (key == "qmax") {
      cfg.qmax = parse_int(key, val);
      if (cfg.qmax < 0) fail(errc::schema, "config key 'qmax': must be >= 0");
    } else if (key == "criterion") {
      if (val == "aic") cfg.crit = ardl::criterion::aic;
      else if (val == "sic") cfg.crit = ardl::criterion::sic;
      else fail(errc::schema, "config key 'criterion': expected aic or sic, got '" + val + "'");
    } else if (key == "case") {
      cfg.bcase = ardl::parse_bounds_case(val);
    } else if (key == "lm_lags") {
      cfg.lm_lags = parse_int(key, val);
      if (cfg.lm_lags < 1) fail(errc::schema, "config key 'lm_lags': must be >= 1");
    } else if (key == "reset_power") {
      cfg.reset_power = parse_int(key, val);
      if (cfg.reset_power < 2) fail(errc::schema, "config key 'reset_power': must be >= 2");
    } else if (key == "het") {
      if (val != "bpg" && val != "arch")
        fail(errc::schema, "config key 'het': expected bpg or arch, got '" + val + "'");
      cfg.het = val;
    } else if (key == "unitroot_lags") {
      cfg.ur_lags = parse_ur_lags(key, val);
    } else if (key == "mode") {
      if (val == "serial") cfg.mode = exec_mode::serial;
      else if (val == "parallel") cfg.mode = exec_mode::parallel;
      else fail(errc::schema, "config key 'mode': expected serial or parallel, got '" + val + "'");
    } else if (key.rfind("transform.", 0) == 0) {
      const std::string var = key.substr(10);
      if (var.empty()) fail(errc::schema, "config key '" + key + "': missing variable name");
      cfg.transforms[var] = parse_transform(key, val);
    } else if (key.rfind("model", 0) == 0 && key.find('.') != std::string::npos) {
      const auto dot = key.find('.');
      const std::string head = key.substr(0, dot), field = key.substr(dot + 1);
      auto& slot = model_slot(head, lineno);
      if (field == "dep") slot.dep = val;
      else if (field == "regs") slot.regs = split_list(val);
      else if (field == "name") slot.name = val;
      else
        fail(errc::schema, "unknown config key '" + key + "' (model fields: dep, regs, name)");
    } else {
      fail(errc::schema, "unknown config key '" + key + "'");
    }
  }

  for (auto& [id, m] : models) {
    if (m.dep.empty())
      fail(errc::schema, "config: model" + std::to_string(id) + " has no dep");
    if (m.regs.empty())
      fail(errc::schema, "config: model" + std::to_string(id) + " has no regs");
    for (const auto& r : m.regs)
      if (r == m.dep)
        fail(errc::schema, "config: model" + std::to_string(id) + " lists dep '" + m.dep +
                               "' among regs");
    std::set<std::string> uniq(m.regs.begin(), m.regs.end());
    if (uniq.size() != m.regs.size())
      fail(errc::schema, "config: model" + std::to_string(id) + " has duplicate regressors");
    if (m.name.empty()) m.name = "Model " + std::to_string(id);
    cfg.models.push_back(m);
  }
  return cfg;
}

run_config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::schema, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

tsdata::dataset apply_transforms(const run_config& cfg, const tsdata::dataset& raw) {
  for (const auto& [var, op] : cfg.transforms)
    if (!raw.find(var))
      fail(errc::schema, "config transform references variable '" + var +
                             "' absent from the input");
  tsdata::dataset out;
  out.start_year = raw.start_year;
  for (const auto& col : raw.columns) {
    const auto it = cfg.transforms.find(col.name);
    if (it == cfg.transforms.end()) {
      out.columns.push_back(col);
    } else {
      auto s = tsdata::transform(col, it->second);
      s.name = col.name;  // transformed series keep their input names
      out.columns.push_back(std::move(s));
      out.start_year = std::max(out.start_year, out.columns.back().start_year);
    }
  }
  return out;
}

namespace {

ur_entry make_ur_entry(const std::string& var, int diff_order, det_spec det,
                       const unitroot::ur_result& r) {
  ur_entry e;
  e.var = var;
  e.diff_order = diff_order;
  e.det = det_name(det);
  e.test = r.test == "adf" ? "ADF" : "PP";
  e.stat = r.stat;
  e.order = r.lags;
  e.cv1 = r.cv1;
  e.cv5 = r.cv5;
  e.cv10 = r.cv10;
  e.stars = r.stars();
  return e;
}

coef_row make_coef_row(const std::string& name, double coef, double se, double t, double p) {
  return coef_row{name, coef, se, t, p, ardl::stars_for_pvalue(p)};
}

stability_block make_stability_block(const diag::stability_result& s, int first_year) {
  stability_block b;
  b.kind = s.name;
  b.stable = s.stable;
  for (int i = 0; i < s.size(); ++i)
    b.points.push_back(path_point{first_year + s.index[static_cast<size_t>(i)] - 1, s.stat(i),
                                  s.lower(i), s.upper(i)});
  return b;
}

const char* verdict_name(ardl::bounds_verdict v) {
  switch (v) {
    case ardl::bounds_verdict::cointegrated: return "cointegrated";
    case ardl::bounds_verdict::inconclusive: return "inconclusive";
    case ardl::bounds_verdict::not_cointegrated: return "not_cointegrated";
  }
  return "?";
}

model_report run_one_model(const run_config& cfg, const tsdata::dataset& ds,
                           const model_def& def) {
  model_report r;
  r.def = def;
  try {
    ardl::model_data md;
    md.dep = ds.require(def.dep);
    for (const auto& name : def.regs) md.regs.push_back(ds.require(name));
    md.det = det_spec::constant;

    // I(2) gate: a series whose level AND first difference both keep a unit
    // root at 5% is integrated of order two or worse -- the bounds test's
    // critical values do not cover that, so the model is aborted.
    std::vector<const tsdata::series*> vars{&md.dep};
    for (const auto& s : md.regs) vars.push_back(&s);
    for (const auto* s : vars) {
      const auto level = unitroot::adf_test(*s, det_spec::constant, cfg.ur_lags);
      if (level.reject(0.05)) continue;
      const auto d1 = unitroot::adf_test(tsdata::transform(*s, tsdata::transform_op::diff()),
                                         det_spec::constant, cfg.ur_lags);
      if (!d1.reject(0.05))
        fail(errc::domain,
             "variable '" + s->name +
                 "' appears integrated of order 2 (ADF keeps the unit root at 5% in both the "
                 "level and the first difference); ARDL bounds testing is not suitable for I(2)");
    }

    const auto sel = ardl::select_lags(md, cfg.pmax, cfg.qmax, cfg.crit, cfg.mode);
    r.p = sel.chosen.p;
    r.q = sel.chosen.q;
    r.selected_spec = sel.chosen.str();
    r.criterion_value = sel.criterion_value;
    r.criterion_name = cfg.crit == ardl::criterion::aic ? "aic" : "sic";

    const auto f = ardl::fit_ardl(md, sel.chosen);
    r.sample_first = f.first_year;
    r.effective_T = f.reg.nobs;
    r.sample_last = f.first_year + f.reg.nobs - 1;

    const auto b = ardl::bounds_f_test(md, sel.chosen, cfg.bcase);
    r.fstat = b.fstat;
    r.bounds_k = b.k;
    r.bounds_m = b.m;
    r.bounds_case_name = [&] {
      switch (cfg.bcase) {
        case ardl::bounds_case::I: return "I";
        case ardl::bounds_case::II: return "II";
        case ardl::bounds_case::III: return "III";
        case ardl::bounds_case::IV: return "IV";
        case ardl::bounds_case::V: return "V";
      }
      return "?";
    }();
    r.bounds_cvs = b.cvs;
    r.bounds_verdict = verdict_name(b.verdict(0.05));
    r.bounds_stars = b.stars();

    const auto ecm = ardl::to_ecm(f);
    for (int j = 0; j < ecm.reg.nparams; ++j) {
      if (j < ecm.det_k) continue;  // deterministic terms stay out of Table 4's block
      r.shortrun.push_back(make_coef_row(ecm.reg.colnames[j], ecm.reg.beta(j), ecm.reg.se(j),
                                         ecm.reg.tstat(j), ecm.reg.pvalue(j)));
    }
    r.ect = ecm.ect();
    r.ect_se = ecm.ect_se();
    r.ect_stable_adjustment = r.ect > -2.0 && r.ect < 0.0;

    const auto& lr = ecm.lr;
    for (int i = 0; i < static_cast<int>(lr.names.size()); ++i)
      r.longrun.push_back(
          make_coef_row(lr.names[i], lr.theta(i), lr.se(i), lr.tstat(i), lr.pvalue(i)));

    const auto bg = diag::breusch_godfrey(f.reg, cfg.lm_lags);
    r.diagnostics.push_back(diag_row{"Serial correlation (" + bg.name + ")", bg.stat, bg.df, 0,
                                     bg.pvalue});
    const auto het = cfg.het == "arch" ? diag::arch_lm(f.reg) : diag::breusch_pagan(f.reg);
    r.diagnostics.push_back(
        diag_row{"Heteroskedasticity (" + het.name + ")", het.stat, het.df, 0, het.pvalue});
    const auto jb = diag::jarque_bera(f.reg.resid);
    r.diagnostics.push_back(diag_row{"Normality (Jarque-Bera)", jb.stat, 2, 0, jb.pvalue});
    const auto reset = diag::ramsey_reset(f.reg, cfg.reset_power);
    r.diagnostics.push_back(diag_row{"Functional form (" + reset.name + ")", reset.stat,
                                     reset.df1, reset.df2, reset.pvalue});

    r.cusum = make_stability_block(diag::cusum(f.reg.y, f.reg.X), f.first_year);
    r.cusumsq = make_stability_block(diag::cusumsq(f.reg.y, f.reg.X), f.first_year);

    r.ok = true;
  } catch (const error& e) {
    r.ok = false;
    r.error = e.what();
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = std::string("internal: ") + e.what();
  }
  return r;
}

}  // namespace

run_report run_pipeline(const run_config& cfg) {
  if (cfg.input_path.empty()) fail(errc::schema, "config: no input path given");
  return run_pipeline(cfg, tsdata::load_dataset(cfg.input_path));
}

run_report run_pipeline(const run_config& cfg, const tsdata::dataset& raw) {
  for (const auto& m : cfg.models) {
    if (!raw.find(m.dep))
      fail(errc::schema, "config model" + std::to_string(m.id) + " references variable '" +
                             m.dep + "' absent from the input");
    for (const auto& reg : m.regs)
      if (!raw.find(reg))
        fail(errc::schema, "config model" + std::to_string(m.id) + " references variable '" +
                               reg + "' absent from the input");
  }
  const tsdata::dataset ds = apply_transforms(cfg, raw);

  run_report rep;
  rep.version = kVersion;
  rep.seed = cfg.seed;
  rep.config_echo = cfg.echo;

  // Table 2 analogue over the variables the models touch, in first-use order.
  std::vector<std::string> urvars;
  for (const auto& m : cfg.models) {
    auto add = [&](const std::string& v) {
      if (std::find(urvars.begin(), urvars.end(), v) == urvars.end()) urvars.push_back(v);
    };
    add(m.dep);
    for (const auto& rname : m.regs) add(rname);
  }
  for (const auto& var : urvars) {
    const auto& level = ds.require(var);
    for (int diff_order = 0; diff_order <= 1; ++diff_order) {
      tsdata::series s =
          diff_order ? tsdata::transform(level, tsdata::transform_op::diff()) : level;
      for (det_spec det : {det_spec::constant, det_spec::constant_trend}) {
        try {
          rep.unit_roots.push_back(
              make_ur_entry(var, diff_order, det, unitroot::adf_test(s, det, cfg.ur_lags)));
          rep.unit_roots.push_back(
              make_ur_entry(var, diff_order, det, unitroot::pp_test(s, det)));
        } catch (const error&) {
          // a series too short or too degenerate for this entry: the affected
          // models fail with their own named reasons
        }
      }
    }
  }

  const int n = static_cast<int>(cfg.models.size());
  rep.models.resize(static_cast<size_t>(n));
  if (cfg.mode == exec_mode::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i)
      rep.models[static_cast<size_t>(i)] = run_one_model(cfg, ds, cfg.models[static_cast<size_t>(i)]);
  } else {
    for (int i = 0; i < n; ++i)
      rep.models[static_cast<size_t>(i)] = run_one_model(cfg, ds, cfg.models[static_cast<size_t>(i)]);
  }
  return rep;
}

}  // namespace ardlkit::pipeline

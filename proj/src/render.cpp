#include "collindiag/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "collindiag/errors.hpp"

namespace collindiag {

using Json = nlohmann::ordered_json;

std::optional<ReportFormat> parse_format(std::string_view text) {
  if (text == "text") return ReportFormat::Text;
  if (text == "json") return ReportFormat::Json;
  return std::nullopt;
}

namespace {

// ---- JSON -----------------------------------------------------------------

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> number_or_null(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

ColumnRole role_from(const Json& j) {
  const auto role = parse_role(j.get<std::string>());
  if (!role) throw DataError("unknown column role '" + j.get<std::string>() + "'");
  return *role;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from(const Json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j.at(r).size() != cols) throw DataError("ragged matrix in report");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
  }
  return m;
}

Json to_json(const FitSummary& f) {
  return Json{{"dependent", f.dependent},
              {"r_squared", f.r_squared},
              {"coefficients", f.coefficients}};
}

Json to_json(const CorrelationReport& c) {
  Json pairs = Json::array();
  for (const auto& p : c.flagged_pairs)
    pairs.push_back(Json{{"first", p.first}, {"second", p.second}, {"abs_r", p.abs_r}});
  return Json{{"names", c.names},
              {"matrix", matrix_json(c.matrix.full())},
              {"determinant", c.determinant},
              {"threshold", c.threshold},
              {"flagged_pairs", std::move(pairs)}};
}

Json to_json(const VifTable& v) {
  Json entries = Json::array();
  for (const auto& e : v.entries)
    entries.push_back(Json{{"name", e.name},
                           {"role", to_string(e.role)},
                           {"aux_r_squared", optional_number(e.aux_r_squared)},
                           {"vif", optional_number(e.vif)}});
  return Json{{"entries", std::move(entries)}};
}

Json to_json(const StewartTable& s) {
  Json entries = Json::array();
  for (const auto& e : s.entries) entries.push_back(Json{{"name", e.name}, {"index", e.index}});
  return Json{{"entries", std::move(entries)}};
}

Json to_json(const BelsleyTable& b) {
  return Json{{"names", b.names},
              {"first_is_intercept", b.first_is_intercept},
              {"condition_indexes", b.condition_indexes},
              {"vdp", matrix_json(b.vdp)}};
}

Json to_json(const std::vector<CvEntry>& cvs) {
  Json entries = Json::array();
  for (const auto& e : cvs)
    entries.push_back(Json{{"name", e.name}, {"cv", optional_number(e.cv)}, {"note", e.note}});
  return entries;
}

Json to_json(const SlmReport& s) {
  return Json{{"regressor", s.regressor},
              {"regressor_role", to_string(s.regressor_role)},
              {"condition_number_with_intercept", s.cn_with_intercept},
              {"stewart_intercept", s.stewart_intercept},
              {"stewart_regressor", s.stewart_regressor},
              {"cv", optional_number(s.cv)},
              {"proportion_ones", optional_number(s.proportion_ones)},
              {"closed_form_condition_number", optional_number(s.closed_form_cn)},
              {"variability_note", s.variability_note},
              {"problematic", s.problematic}};
}

Json to_json(double v) { return Json(v); }

template <class T>
void put_section(Json& doc, Json& reasons, const char* key, const Section<T>& s) {
  if (s.value) {
    doc[key] = to_json(*s.value);
  } else {
    doc[key] = nullptr;
    reasons[key] = s.reason;
  }
}

FitSummary fit_from(const Json& j) {
  return {j.at("dependent").get<std::string>(),
          j.at("coefficients").get<std::vector<double>>(), j.at("r_squared").get<double>()};
}

CorrelationReport correlation_from(const Json& j) {
  CorrelationReport c;
  c.names = j.at("names").get<std::vector<std::string>>();
  c.matrix = SymmetricMatrix::from_full(matrix_from(j.at("matrix")));
  c.determinant = j.at("determinant").get<double>();
  c.threshold = j.at("threshold").get<double>();
  for (const auto& p : j.at("flagged_pairs"))
    c.flagged_pairs.push_back({p.at("first").get<std::string>(), p.at("second").get<std::string>(),
                               p.at("abs_r").get<double>()});
  return c;
}

VifTable vif_from(const Json& j) {
  VifTable v;
  for (const auto& e : j.at("entries"))
    v.entries.push_back({e.at("name").get<std::string>(), role_from(e.at("role")),
                         number_or_null(e.at("aux_r_squared")), number_or_null(e.at("vif"))});
  return v;
}

StewartTable stewart_from(const Json& j) {
  StewartTable s;
  for (const auto& e : j.at("entries"))
    s.entries.push_back({e.at("name").get<std::string>(), e.at("index").get<double>()});
  return s;
}

BelsleyTable belsley_from(const Json& j) {
  BelsleyTable b;
  b.names = j.at("names").get<std::vector<std::string>>();
  b.first_is_intercept = j.at("first_is_intercept").get<bool>();
  b.condition_indexes = j.at("condition_indexes").get<std::vector<double>>();
  b.vdp = matrix_from(j.at("vdp"));
  return b;
}

std::vector<CvEntry> cv_from(const Json& j) {
  std::vector<CvEntry> out;
  for (const auto& e : j)
    out.push_back({e.at("name").get<std::string>(), number_or_null(e.at("cv")),
                   e.at("note").get<std::string>()});
  return out;
}

SlmReport slm_from(const Json& j) {
  SlmReport s;
  s.regressor = j.at("regressor").get<std::string>();
  s.regressor_role = role_from(j.at("regressor_role"));
  s.cn_with_intercept = j.at("condition_number_with_intercept").get<double>();
  s.stewart_intercept = j.at("stewart_intercept").get<double>();
  s.stewart_regressor = j.at("stewart_regressor").get<double>();
  s.cv = number_or_null(j.at("cv"));
  s.proportion_ones = number_or_null(j.at("proportion_ones"));
  s.closed_form_cn = number_or_null(j.at("closed_form_condition_number"));
  s.variability_note = j.at("variability_note").get<std::string>();
  s.problematic = j.at("problematic").get<bool>();
  return s;
}

template <class T, class Parse>
Section<T> get_section(const Json& doc, const Json& reasons, const char* key, Parse parse) {
  const Json& j = doc.at(key);
  if (j.is_null()) return Section<T>::not_applicable(reasons.at(key).get<std::string>());
  return Section<T>::of(parse(j));
}

// ---- text -----------------------------------------------------------------

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string lpad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::size_t widest(const std::vector<std::string>& names, std::size_t floor) {
  std::size_t w = floor;
  for (const auto& n : names) w = std::max(w, n.size());
  return w;
}

std::string verdict_label(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::None: return "none";
    case VerdictKind::Essential: return "essential multicollinearity";
    case VerdictKind::NonEssential: return "non-essential multicollinearity";
    case VerdictKind::Both: return "essential and non-essential multicollinearity";
  }
  return "unknown";
}

void text_report(std::ostream& out, const DiagnosticsReport& r) {
  const auto& t = r.thresholds;
  out << "Collinearity diagnostics";
  if (!r.dataset_id.empty()) out << ": " << r.dataset_id;
  out << "\n\nDesign: n = " << r.design.n << ", k = " << r.design.k << "\n";
  const std::size_t w = widest(r.design.names, 10) + 2;
  for (std::size_t j = 0; j < r.design.names.size(); ++j)
    out << "  " << pad(r.design.names[j], w) << to_string(r.design.roles[j]) << "\n";

  out << "\nModel fit\n";
  if (r.fit.value)
    out << "  R-squared of " << r.fit.value->dependent << " on all columns: "
        << num(r.fit.value->r_squared) << "\n";
  else
    out << "  not applicable: " << r.fit.reason << "\n";

  out << "\nCondition number\n";
  out << "  with intercept:    "
      << (r.cn_with_intercept.value ? num(*r.cn_with_intercept.value)
                                    : "not applicable (" + r.cn_with_intercept.reason + ")")
      << "\n";
  out << "  without intercept: "
      << (r.cn_without_intercept.value
              ? num(*r.cn_without_intercept.value)
              : "not applicable (" + r.cn_without_intercept.reason + ")")
      << "\n";

  out << "\nCorrelation matrix";
  if (r.legacy_dummies) out << " (dummies included, legacy mode)";
  out << "\n";
  if (const auto& c = r.correlation.value) {
    const std::size_t cw = widest(c->names, 10) + 2;
    out << "  " << pad("", cw);
    for (const auto& n : c->names) out << lpad(n, cw);
    out << "\n";
    for (std::size_t i = 0; i < c->names.size(); ++i) {
      out << "  " << pad(c->names[i], cw);
      for (std::size_t j = 0; j < c->names.size(); ++j) out << lpad(num(c->matrix(i, j)), cw);
      out << "\n";
    }
    out << "  determinant: " << num(c->determinant) << "\n";
    if (c->flagged_pairs.empty()) {
      out << "  no pair with |r| >= " << num(c->threshold) << "\n";
    } else {
      for (const auto& p : c->flagged_pairs)
        out << "  " << p.first << " and " << p.second << " may be collinear: |r| = "
            << num(p.abs_r) << " >= " << num(c->threshold) << "\n";
    }
  } else {
    out << "  not applicable: " << r.correlation.reason << "\n";
  }

  out << "\nVariance inflation factors";
  if (r.legacy_dummies) out << " (dummies included, legacy mode)";
  out << "\n";
  if (const auto& v = r.vif.value) {
    std::vector<std::string> names;
    for (const auto& e : v->entries) names.push_back(e.name);
    const std::size_t vw = widest(names, 10) + 2;
    for (const auto& e : v->entries) {
      out << "  " << pad(e.name, vw);
      if (e.vif)
        out << num(*e.vif) << (*e.vif >= t.vif ? "  (>= " + num(t.vif) + ")" : "");
      else
        out << "not applicable (" << to_string(e.role) << " column)";
      out << "\n";
    }
  } else {
    out << "  not applicable: " << r.vif.reason << "\n";
  }

  out << "\nStewart indices (unit-length, non-centered design)\n";
  if (const auto& s = r.stewart.value) {
    std::vector<std::string> names;
    for (const auto& e : s->entries) names.push_back(e.name);
    const std::size_t sw = widest(names, 10) + 2;
    for (const auto& e : s->entries) out << "  " << pad(e.name, sw) << num(e.index) << "\n";
  } else {
    out << "  not applicable: " << r.stewart.reason << "\n";
  }

  out << "\nCondition indexes and variance decomposition proportions\n";
  if (const auto& b = r.belsley.value) {
    const std::size_t bw = widest(b->names, 10) + 2;
    out << "  " << pad("", 4) << lpad("index", 12);
    for (const auto& n : b->names) out << lpad(n, bw);
    out << "\n";
    for (std::size_t i = 0; i < b->condition_indexes.size(); ++i) {
      out << "  " << pad(std::to_string(i + 1), 4) << lpad(num(b->condition_indexes[i]), 12);
      for (std::size_t j = 0; j < b->names.size(); ++j) out << lpad(num(b->vdp(i, j)), bw);
      out << "\n";
    }
  } else {
    out << "  not applicable: " << r.belsley.reason << "\n";
  }

  out << "\nCoefficient of variation\n";
  if (const auto& cvs = r.cv.value) {
    std::vector<std::string> names;
    for (const auto& e : *cvs) names.push_back(e.name);
    const std::size_t vw = widest(names, 10) + 2;
    for (const auto& e : *cvs) {
      out << "  " << pad(e.name, vw);
      if (e.cv)
        out << num(*e.cv) << (*e.cv < t.cv ? "  (< " + num(t.cv) + ")" : "");
      else
        out << "not applicable (" << e.note << ")";
      out << "\n";
    }
  } else {
    out << "  not applicable: " << r.cv.reason << "\n";
  }

  if (const auto& s = r.slm.value) {
    out << "\nSimple linear model: intercept + " << s->regressor << "\n";
    out << "  condition number:  " << num(s->cn_with_intercept) << "\n";
    out << "  Stewart indices:   " << num(s->stewart_intercept) << ", "
        << num(s->stewart_regressor) << "\n";
    if (s->cv) out << "  CV:                " << num(*s->cv) << "\n";
    if (!s->variability_note.empty()) out << "  CV:                " << s->variability_note << "\n";
    if (s->proportion_ones) {
      out << "  proportion of ones: " << num(*s->proportion_ones) << "\n";
      out << "  closed-form CN:    " << num(*s->closed_form_cn) << "\n";
    }
    out << "  problematic:       " << (s->problematic ? "yes" : "no") << "\n";
  }

  out << "\nVerdict\n";
  if (r.verdict.kind == VerdictKind::None) {
    out << "  No problematic multicollinearity detected\n";
  } else {
    out << "  " << verdict_label(r.verdict.kind) << "\n";
    for (const auto& set : r.verdict.implicated) {
      out << "  implicated: {";
      for (std::size_t i = 0; i < set.size(); ++i) out << (i ? ", " : "") << set[i];
      out << "}\n";
    }
  }
  if (!r.verdict.evidence.empty()) {
    out << "  evidence:\n";
    for (const auto& e : r.verdict.evidence)
      out << "    " << pad(e.measure, 28) << lpad(num(e.value), 12) << "  threshold "
          << num(e.threshold) << "\n";
  }
}

}  // namespace

Json report_to_json(const DiagnosticsReport& r) {
  Json doc;
  Json reasons = Json::object();
  doc["dataset"] = r.dataset_id;

  Json columns = Json::array();
  for (std::size_t j = 0; j < r.design.names.size(); ++j)
    columns.push_back(Json{{"name", r.design.names[j]}, {"role", to_string(r.design.roles[j])}});
  doc["design"] = Json{{"n", r.design.n}, {"k", r.design.k}, {"columns", std::move(columns)}};

  const auto& t = r.thresholds;
  doc["thresholds"] = Json{{"cn_problematic", t.cn_problematic}, {"cn_moderate", t.cn_moderate},
                           {"vif", t.vif},
                           {"corr", t.corr},
                           {"vdp", t.vdp},
                           {"cv", t.cv},
                           {"dummy_proportion", t.dummy_proportion}};
  doc["legacy_dummies"] = r.legacy_dummies;

  put_section(doc, reasons, "fit", r.fit);
  put_section(doc, reasons, "condition_number_with_intercept", r.cn_with_intercept);
  put_section(doc, reasons, "condition_number_without_intercept", r.cn_without_intercept);
  put_section(doc, reasons, "correlation", r.correlation);
  put_section(doc, reasons, "vif", r.vif);
  put_section(doc, reasons, "stewart", r.stewart);
  put_section(doc, reasons, "belsley", r.belsley);
  put_section(doc, reasons, "coefficient_of_variation", r.cv);
  put_section(doc, reasons, "slm", r.slm);

  Json evidence = Json::array();
  for (const auto& e : r.verdict.evidence)
    evidence.push_back(Json{{"measure", e.measure}, {"value", e.value}, {"threshold", e.threshold}});
  doc["verdict"] = Json{{"kind", to_string(r.verdict.kind)},
                        {"implicated", r.verdict.implicated},
                        {"evidence", std::move(evidence)}};
  doc["not_applicable"] = std::move(reasons);
  return doc;
}

DiagnosticsReport report_from_json(const Json& doc) {
  DiagnosticsReport r;
  const Json& reasons = doc.at("not_applicable");
  r.dataset_id = doc.at("dataset").get<std::string>();

  const Json& design = doc.at("design");
  r.design.n = design.at("n").get<std::size_t>();
  r.design.k = design.at("k").get<std::size_t>();
  for (const auto& c : design.at("columns")) {
    r.design.names.push_back(c.at("name").get<std::string>());
    r.design.roles.push_back(role_from(c.at("role")));
  }

  const Json& t = doc.at("thresholds");
  r.thresholds.cn_problematic = t.at("cn_problematic").get<double>();
  r.thresholds.cn_moderate = t.at("cn_moderate").get<double>();
  r.thresholds.vif = t.at("vif").get<double>();
  r.thresholds.corr = t.at("corr").get<double>();
  r.thresholds.vdp = t.at("vdp").get<double>();
  r.thresholds.cv = t.at("cv").get<double>();
  r.thresholds.dummy_proportion = t.at("dummy_proportion").get<double>();
  r.legacy_dummies = doc.at("legacy_dummies").get<bool>();

  const auto scalar = [](const Json& j) { return j.get<double>(); };
  r.fit = get_section<FitSummary>(doc, reasons, "fit", fit_from);
  r.cn_with_intercept =
      get_section<double>(doc, reasons, "condition_number_with_intercept", scalar);
  r.cn_without_intercept =
      get_section<double>(doc, reasons, "condition_number_without_intercept", scalar);
  r.correlation = get_section<CorrelationReport>(doc, reasons, "correlation", correlation_from);
  r.vif = get_section<VifTable>(doc, reasons, "vif", vif_from);
  r.stewart = get_section<StewartTable>(doc, reasons, "stewart", stewart_from);
  r.belsley = get_section<BelsleyTable>(doc, reasons, "belsley", belsley_from);
  r.cv = get_section<std::vector<CvEntry>>(doc, reasons, "coefficient_of_variation", cv_from);
  r.slm = get_section<SlmReport>(doc, reasons, "slm", slm_from);

  const Json& v = doc.at("verdict");
  const auto kind = parse_verdict_kind(v.at("kind").get<std::string>());
  if (!kind) throw DataError("unknown verdict kind '" + v.at("kind").get<std::string>() + "'");
  r.verdict.kind = *kind;
  r.verdict.implicated = v.at("implicated").get<std::vector<std::vector<std::string>>>();
  for (const auto& e : v.at("evidence"))
    r.verdict.evidence.push_back({e.at("measure").get<std::string>(), e.at("value").get<double>(),
                                  e.at("threshold").get<double>()});
  return r;
}

std::string render(const DiagnosticsReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) return report_to_json(report).dump(2) + "\n";
  std::ostringstream out;
  text_report(out, report);
  return out.str();
}

}  // namespace collindiag

#include "collindiag/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "collindiag/errors.hpp"
#include "collindiag/kernels.hpp"

namespace collindiag {

std::string_view to_string(ColumnRole role) {
  switch (role) {
    case ColumnRole::Intercept: return "intercept";
    case ColumnRole::Quantitative: return "quantitative";
    case ColumnRole::Dummy: return "dummy";
  }
  return "unknown";
}

std::optional<ColumnRole> parse_role(std::string_view text) {
  if (text == "intercept") return ColumnRole::Intercept;
  if (text == "quantitative") return ColumnRole::Quantitative;
  if (text == "dummy") return ColumnRole::Dummy;
  return std::nullopt;
}

std::string_view to_string(ScalingMode mode) {
  switch (mode) {
    case ScalingMode::Raw: return "raw";
    case ScalingMode::UnitLength: return "unit-length";
    case ScalingMode::CenteredUnitLength: return "centered-unit-length";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::optional<double> parse_number(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  if (*begin == '+') ++begin;  // from_chars rejects a leading plus
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

bool is_all_ones(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v == 1.0; });
}

bool is_binary(std::span<const double> x) {
  bool zero = false, one = false;
  for (double v : x) {
    if (v == 0.0) zero = true;
    else if (v == 1.0) one = true;
    else return false;
  }
  return zero && one;
}

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

void check_role(const std::string& name, ColumnRole role, std::span<const double> x) {
  switch (role) {
    case ColumnRole::Intercept:
      if (!is_all_ones(x))
        throw DataError("column '" + name + "' has role intercept but is not all ones");
      break;
    case ColumnRole::Dummy:
      if (!is_binary(x))
        throw DataError("column '" + name +
                        "' has role dummy but its values are not exactly {0, 1}");
      break;
    case ColumnRole::Quantitative:
      if (is_constant(x))
        throw DataError("column '" + name + "' is constant (zero variance)");
      break;
  }
}

}  // namespace

Dataset::Dataset(std::vector<std::string> names, Matrix values)
    : names_(std::move(names)), values_(std::move(values)) {
  if (names_.size() != values_.cols())
    throw DataError("dataset has " + std::to_string(names_.size()) + " names for " +
                    std::to_string(values_.cols()) + " columns");
  if (values_.rows() == 0) throw DataError("no observations");
  if (values_.cols() == 0) throw DataError("no columns");
  std::set<std::string_view> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw DataError("empty column name");
    if (!seen.insert(name).second) throw DataError("duplicate column name '" + name + "'");
  }
  for (double v : values_.data())
    if (!std::isfinite(v)) throw DataError("dataset contains a non-finite value");
}

std::optional<std::size_t> Dataset::index_of(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

Dataset Dataset::select(std::span<const std::string> names) const {
  Matrix out(rows(), names.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto src = index_of(names[j]);
    if (!src) throw DataError("unknown column '" + names[j] + "'");
    for (std::size_t i = 0; i < rows(); ++i) out(i, j) = values_(i, *src);
  }
  return Dataset({names.begin(), names.end()}, std::move(out));
}

Dataset parse_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::vector<double> cells;
  std::size_t rows = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;

    const auto fields = split_fields(line);
    if (header.empty()) {
      header.assign(fields.begin(), fields.end());
      continue;
    }
    ++rows;
    if (fields.size() != header.size())
      throw DataError("ragged row " + std::to_string(rows) + " (line " +
                      std::to_string(line_no) + "): expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    for (std::size_t j = 0; j < fields.size(); ++j) {
      const auto value = parse_number(fields[j]);
      if (!value)
        throw DataError("non-numeric cell '" + std::string(fields[j]) + "' at row " +
                        std::to_string(rows) + " (line " + std::to_string(line_no) +
                        "), column '" + header[j] + "'");
      cells.push_back(*value);
    }
  }
  if (header.empty()) throw DataError("missing header row");
  if (rows == 0) throw DataError("no observations");

  Matrix values(rows, header.size());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < header.size(); ++j)
      values(i, j) = cells[i * header.size() + j];
  return Dataset(std::move(header), std::move(values));
}

LoadedData split_dependent(const Dataset& table, std::string_view dependent) {
  const auto dep = table.index_of(dependent);
  if (!dep) throw DataError("unknown dependent column '" + std::string(dependent) + "'");
  if (table.cols() < 2) throw DataError("no regressor columns besides the dependent");
  std::vector<std::string> rest;
  for (const auto& name : table.names())
    if (name != dependent) rest.push_back(name);
  return LoadedData{table.select(rest), std::string(dependent), table.column(*dep)};
}

LoadedData load_csv(const std::filesystem::path& path, std::string_view dependent) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return split_dependent(parse_csv(in), dependent);
}

std::vector<ColumnRole> infer_roles(const Dataset& d, const RoleOverrides& overrides) {
  for (const auto& [name, role] : overrides)
    if (!d.index_of(name))
      throw DataError("role override for unknown column '" + name + "'");

  std::vector<ColumnRole> roles;
  roles.reserve(d.cols());
  for (std::size_t j = 0; j < d.cols(); ++j) {
    const auto& name = d.names()[j];
    const auto x = d.column(j);
    ColumnRole role;
    if (const auto it = overrides.find(name); it != overrides.end()) {
      role = it->second;
    } else if (is_all_ones(x)) {
      role = ColumnRole::Intercept;
    } else if (is_binary(x)) {
      role = ColumnRole::Dummy;
    } else {
      role = ColumnRole::Quantitative;
    }
    check_role(name, role, x);
    roles.push_back(role);
  }
  return roles;
}

DesignMatrix::DesignMatrix(std::vector<Column> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw DataError("design matrix needs at least one column");
  n_ = columns_.front().values.size();
  if (n_ == 0) throw DataError("no observations");
  std::set<std::string_view> seen;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    const auto& c = columns_[j];
    if (c.values.size() != n_)
      throw DataError("column '" + c.name + "' has " + std::to_string(c.values.size()) +
                      " entries, expected " + std::to_string(n_));
    if (c.name.empty()) throw DataError("empty column name");
    if (!seen.insert(c.name).second)
      throw DataError("duplicate column name '" + c.name + "'");
    if (c.role == ColumnRole::Intercept && j != 0)
      throw DataError("intercept column '" + c.name + "' must be the first column");
    for (double v : c.values)
      if (!std::isfinite(v)) throw DataError("column '" + c.name + "' has a non-finite value");
  }
}

std::vector<std::string> DesignMatrix::names() const {
  std::vector<std::string> out;
  for (const auto& c : columns_) out.push_back(c.name);
  return out;
}

std::vector<ColumnRole> DesignMatrix::roles() const {
  std::vector<ColumnRole> out;
  for (const auto& c : columns_) out.push_back(c.role);
  return out;
}

std::optional<std::size_t> DesignMatrix::index_of(std::string_view name) const {
  for (std::size_t j = 0; j < columns_.size(); ++j)
    if (columns_[j].name == name) return j;
  return std::nullopt;
}

DesignMatrix DesignMatrix::without_intercept() const {
  if (!has_intercept()) return *this;
  return DesignMatrix({columns_.begin() + 1, columns_.end()});
}

DesignMatrix DesignMatrix::select(std::span<const std::size_t> indices) const {
  std::vector<Column> out;
  for (std::size_t j : indices) out.push_back(columns_.at(j));
  return DesignMatrix(std::move(out));
}

DesignMatrix build_design(const Dataset& d, bool include_intercept,
                          std::span<const ColumnRole> roles) {
  if (roles.size() != d.cols())
    throw DataError("expected " + std::to_string(d.cols()) + " roles, got " +
                    std::to_string(roles.size()));

  std::vector<DesignMatrix::Column> columns;
  if (include_intercept) {
    columns.push_back({std::string(kInterceptName), ColumnRole::Intercept,
                       std::vector<double>(d.rows(), 1.0)});
  }
  std::optional<std::size_t> user_intercept;
  for (std::size_t j = 0; j < d.cols(); ++j) {
    auto x = d.column(j);
    check_role(d.names()[j], roles[j], x);
    if (roles[j] == ColumnRole::Intercept) {
      if (include_intercept)
        throw DataError("duplicate intercept: column '" + d.names()[j] +
                        "' is all ones and an intercept is also being added");
      if (user_intercept)
        throw DataError("more than one intercept column ('" + d.names()[*user_intercept] +
                        "', '" + d.names()[j] + "')");
      user_intercept = j;
      columns.insert(columns.begin(), {d.names()[j], roles[j], std::move(x)});
    } else {
      columns.push_back({d.names()[j], roles[j], std::move(x)});
    }
  }
  return DesignMatrix(std::move(columns));
}

DesignMatrix scale(const DesignMatrix& x, ScalingMode mode) {
  if (mode == ScalingMode::Raw) return x;
  std::vector<DesignMatrix::Column> out = x.columns();
  for (auto& c : out) {
    const auto m = kernels::moments_parallel(c.values);
    if (mode == ScalingMode::UnitLength) {
      if (m.norm == 0.0) throw DataError("column '" + c.name + "' has zero length");
      for (double& v : c.values) v /= m.norm;
    } else {
      if (c.role == ColumnRole::Intercept)
        throw DataError("cannot center the intercept column '" + c.name + "'");
      if (m.centered_norm == 0.0)
        throw DataError("column '" + c.name + "' is constant; centering leaves zero length");
      for (double& v : c.values) v = (v - m.mean) / m.centered_norm;
    }
  }
  return DesignMatrix(std::move(out));
}

}  // namespace collindiag

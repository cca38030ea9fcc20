#include "dgla/io.hpp"

#include "dgla/builders.hpp"
#include "dgla/fixtures.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dgla::io {

namespace {

std::string join_ptr(const std::string &where, const std::string &key) { return where + "/" + key; }

[[noreturn]] void fail(const std::string &where, const std::string &what) {
  throw ParseError(fmt::format("{}: {}", where.empty() ? "/" : where, what));
}

const Json &field(const Json &obj, const char *key, const std::string &where) {
  if (!obj.is_object())
    fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    fail(join_ptr(where, key), "missing field");
  return *it;
}

int int_from_json(const Json &j, const std::string &where) {
  if (!j.is_number_integer())
    fail(where, "expected an integer");
  return j.get<int>();
}

std::size_t index_from_json(const Json &j, std::size_t bound, const std::string &where) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    fail(where, "expected a non-negative integer");
  auto v = j.get<std::size_t>();
  if (v >= bound)
    fail(where, fmt::format("index {} out of range (dimension {})", v, bound));
  return v;
}

const Json &array_of(const Json &j, std::size_t size, const std::string &where) {
  if (!j.is_array())
    fail(where, "expected an array");
  if (j.size() != size)
    fail(where, fmt::format("expected {} entries, got {}", size, j.size()));
  return j;
}

int degree_key(const std::string &key, const std::string &where) {
  try {
    std::size_t pos = 0;
    int d = std::stoi(key, &pos);
    if (pos == key.size())
      return d;
  } catch (const std::exception &) {
  }
  fail(join_ptr(where, key), "expected an integer degree as key");
}

bool looks_like_json(const std::string &s) {
  auto it = std::find_if(s.begin(), s.end(), [](unsigned char c) { return !std::isspace(c); });
  return it != s.end() && (*it == '{' || *it == '[');
}

bool is_file(const std::string &s) {
  std::error_code ec;
  return !s.empty() && std::filesystem::is_regular_file(s, ec);
}

// Inline JSON or the contents of a file; nullopt for anything else.
std::optional<Json> json_source(const std::string &source) {
  if (looks_like_json(source))
    return parse_json(source, "<argument>");
  if (is_file(source))
    return parse_json(read_file(source), source);
  return std::nullopt;
}

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Json coeff_rows(const Vec &coeffs, std::size_t dim_l, std::size_t dim_m) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < dim_l; ++k) {
    Json row = Json::array();
    for (std::size_t p = 0; p < dim_m; ++p)
      row.push_back(to_json(coeffs[k * dim_m + p]));
    rows.push_back(std::move(row));
  }
  return rows;
}

Vec coeffs_from_rows(const Json &j, std::size_t dim_l, std::size_t dim_m, const std::string &where) {
  array_of(j, dim_l, where);
  Vec out(dim_l * dim_m);
  for (std::size_t k = 0; k < dim_l; ++k) {
    const std::string wk = join_ptr(where, std::to_string(k));
    array_of(j[k], dim_m, wk);
    for (std::size_t p = 0; p < dim_m; ++p)
      out[k * dim_m + p] = scalar_from_json(j[k][p], join_ptr(wk, std::to_string(p)));
  }
  return out;
}

Json dgla_ref(const DglaPtr &l) {
  // builtin DGLAs are referred to by name, everything else inline
  for (const auto &n : fixtures::dgla_names())
    if (n == l->name() && fixtures::dgla(n) == l)
      return "builtin:" + n;
  return dgla_to_json(*l);
}

DglaPtr dgla_from_ref(const Json &j, const std::string &where) {
  if (j.is_string())
    return load_dgla(j.get<std::string>());
  if (j.is_object())
    return dgla_from_json(j);
  fail(where, "expected a DGLA source string or object");
}

} // namespace

// ---------------------------------------------------------------------------

Json parse_json(const std::string &text, const std::string &source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos)
      what = what.substr(pos);
    throw ParseError(fmt::format("{}:{}:{}: {}", source, line, col, what));
  }
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError(fmt::format("{}: cannot open file", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json to_json(const Scalar &s) {
  if (s.get_den() == 1 && s.get_num().fits_slong_p())
    return s.get_num().get_si();
  return to_string(s);
}

Scalar scalar_from_json(const Json &j, const std::string &where) {
  if (j.is_number_integer())
    return j.is_number_unsigned() ? Scalar(mpz_class(std::to_string(j.get<unsigned long long>())))
                                  : Scalar(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_number_float())
    fail(where, "floating-point value; write exact rationals as \"p/q\"");
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const std::exception &) {
      fail(where, fmt::format("'{}' is not a rational number", j.get<std::string>()));
    }
  }
  fail(where, "expected a rational number");
}

Json to_json(const Vec &v) {
  Json out = Json::array();
  for (const auto &s : v)
    out.push_back(to_json(s));
  return out;
}

Json to_json(const Matrix &m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const Json &j, std::size_t rows, std::size_t cols, const std::string &where) {
  array_of(j, rows, where);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string wr = join_ptr(where, std::to_string(r));
    array_of(j[r], cols, wr);
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = scalar_from_json(j[r][c], join_ptr(wr, std::to_string(c)));
  }
  return m;
}

// -- DGLA ----------------------------------------------------------------------

Json dgla_to_json(const Dgla &l) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["name"] = l.name();
  out["window"] = {l.lo(), l.hi()};
  out["open_top"] = l.open_top();
  Json labels = Json::object();
  for (int d = l.lo(); d <= l.hi(); ++d)
    labels[std::to_string(d)] = l.labels(d);
  out["labels"] = labels;

  Json diff = Json::object(), undefined = Json::object();
  for (int d = l.lo(); d <= l.hi(); ++d) {
    if (l.dim(d) == 0 || !l.space().in_window(d + 1) || l.dim(d + 1) == 0)
      continue;
    if (l.d_defined(d)) {
      if (!l.d_block(d).is_zero())
        diff[std::to_string(d)] = to_json(l.d_block(d));
      continue;
    }
    Matrix block(l.dim(d + 1), l.dim(d));
    Json missing = Json::array();
    for (std::size_t k = 0; k < l.dim(d); ++k) {
      Vec v;
      if (l.try_d(d, unit_vector(l.dim(d), k), v))
        block.set_column(k, v);
      else
        missing.push_back(k);
    }
    if (!block.is_zero())
      diff[std::to_string(d)] = to_json(block);
    undefined[std::to_string(d)] = missing;
  }
  out["differential"] = diff;
  if (!undefined.empty())
    out["differential_undefined"] = undefined;

  Json brackets = Json::array();
  for (int i = l.lo(); i <= l.hi(); ++i)
    for (int j = l.lo(); j <= l.hi(); ++j) {
      const BracketBlock *b = l.block(i, j);
      if (b == nullptr)
        continue;
      Json entries = Json::array(), und = Json::array();
      for (std::size_t k = 0; k < b->di; ++k)
        for (std::size_t m = 0; m < b->dj; ++m) {
          if (!b->is_defined(k, m)) {
            und.push_back({k, m});
            continue;
          }
          for (const auto &[t, v] : b->sparse[k * b->dj + m]) {
            Json e = {k, m, t};
            const Scalar num = v.get_num(), den = v.get_den();
            e.push_back(to_json(num));
            e.push_back(to_json(den));
            entries.push_back(std::move(e));
          }
        }
      if (entries.empty() && und.empty())
        continue;
      Json blk;
      blk["i"] = i;
      blk["j"] = j;
      blk["entries"] = entries;
      if (!und.empty())
        blk["undefined"] = und;
      brackets.push_back(std::move(blk));
    }
  out["bracket"] = brackets;
  return out;
}

DglaPtr dgla_from_json(const Json &j) {
  if (!j.is_object())
    fail("", "expected a DGLA object");
  const Json &ver = field(j, "schema_version", "");
  if (int_from_json(ver, "/schema_version") != kSchemaVersion)
    fail("/schema_version", fmt::format("unsupported version {}, expected {}", ver.dump(), kSchemaVersion));
  const Json &win = array_of(field(j, "window", ""), 2, "/window");
  const int lo = int_from_json(win[0], "/window/0"), hi = int_from_json(win[1], "/window/1");
  if (hi < lo)
    fail("/window", "window is empty");
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);

  std::vector<std::vector<std::string>> labels(n);
  if (j.contains("labels")) {
    const Json &lj = j["labels"];
    if (!lj.is_object())
      fail("/labels", "expected an object keyed by degree");
    for (const auto &[key, val] : lj.items()) {
      const int d = degree_key(key, "/labels");
      if (d < lo || d > hi)
        fail(join_ptr("/labels", key), "degree outside the window");
      if (!val.is_array())
        fail(join_ptr("/labels", key), "expected an array of labels");
      for (std::size_t k = 0; k < val.size(); ++k) {
        if (!val[k].is_string())
          fail(join_ptr(join_ptr("/labels", key), std::to_string(k)), "expected a string");
        labels[d - lo].push_back(val[k].get<std::string>());
      }
    }
  } else if (j.contains("dims")) {
    const Json &dj = j["dims"];
    if (!dj.is_object())
      fail("/dims", "expected an object keyed by degree");
    std::vector<std::size_t> dims(n, 0);
    for (const auto &[key, val] : dj.items()) {
      const int d = degree_key(key, "/dims");
      if (d < lo || d > hi)
        fail(join_ptr("/dims", key), "degree outside the window");
      if (!val.is_number_integer() || val.get<long long>() < 0)
        fail(join_ptr("/dims", key), "expected a non-negative integer");
      dims[d - lo] = val.get<std::size_t>();
    }
    auto space = GradedSpace::with_dims(lo, dims);
    for (int d = lo; d <= hi; ++d)
      labels[d - lo] = space.labels(d);
  } else {
    fail("/labels", "missing field (give \"labels\" or \"dims\")");
  }

  bool open_top = false;
  if (j.contains("open_top")) {
    if (!j["open_top"].is_boolean())
      fail("/open_top", "expected a boolean");
    open_top = j["open_top"].get<bool>();
  }
  std::string name = j.value("name", std::string{});
  DglaBuilder b(GradedSpace(lo, labels), open_top, name);
  const auto &space = b.space();

  if (j.contains("differential")) {
    const Json &dj = j["differential"];
    if (!dj.is_object())
      fail("/differential", "expected an object keyed by degree");
    for (const auto &[key, val] : dj.items()) {
      const std::string w = join_ptr("/differential", key);
      const int d = degree_key(key, "/differential");
      if (d < lo || d >= hi)
        fail(w, "no differential out of this degree inside the window");
      b.set_d_block(d, matrix_from_json(val, space.dim(d + 1), space.dim(d), w));
    }
  }
  if (j.contains("differential_undefined")) {
    const Json &uj = j["differential_undefined"];
    if (!uj.is_object())
      fail("/differential_undefined", "expected an object keyed by degree");
    for (const auto &[key, val] : uj.items()) {
      const std::string w = join_ptr("/differential_undefined", key);
      const int d = degree_key(key, "/differential_undefined");
      if (d < lo || d > hi)
        fail(w, "degree outside the window");
      if (!val.is_array())
        fail(w, "expected an array of basis indices");
      for (std::size_t k = 0; k < val.size(); ++k)
        b.mark_d_undefined(d, index_from_json(val[k], space.dim(d), join_ptr(w, std::to_string(k))));
    }
  }
  if (j.contains("bracket")) {
    const Json &bj = j["bracket"];
    if (!bj.is_array())
      fail("/bracket", "expected an array of blocks");
    for (std::size_t bi = 0; bi < bj.size(); ++bi) {
      const std::string w = join_ptr("/bracket", std::to_string(bi));
      const Json &blk = bj[bi];
      const int i = int_from_json(field(blk, "i", w), w + "/i");
      const int jj = int_from_json(field(blk, "j", w), w + "/j");
      if (!space.in_window(i) || !space.in_window(jj))
        fail(w, fmt::format("degrees ({}, {}) outside the window", i, jj));
      if (blk.contains("entries")) {
        const Json &ents = blk["entries"];
        if (!ents.is_array())
          fail(w + "/entries", "expected an array");
        for (std::size_t e = 0; e < ents.size(); ++e) {
          const std::string we = join_ptr(w + "/entries", std::to_string(e));
          array_of(ents[e], 5, we);
          if (!space.in_window(i + jj))
            fail(we, fmt::format("bracket of degrees ({}, {}) leaves the window", i, jj));
          const std::size_t k = index_from_json(ents[e][0], space.dim(i), we + "/0");
          const std::size_t l = index_from_json(ents[e][1], space.dim(jj), we + "/1");
          const std::size_t m = index_from_json(ents[e][2], space.dim(i + jj), we + "/2");
          const Scalar num = scalar_from_json(ents[e][3], we + "/3");
          const Scalar den = scalar_from_json(ents[e][4], we + "/4");
          if (den == 0)
            fail(we + "/4", "zero denominator");
          b.set_bracket(i, k, jj, l, i + jj, m, num / den);
        }
      }
      if (blk.contains("undefined")) {
        const Json &und = blk["undefined"];
        if (!und.is_array())
          fail(w + "/undefined", "expected an array of [k, l] pairs");
        for (std::size_t e = 0; e < und.size(); ++e) {
          const std::string we = join_ptr(w + "/undefined", std::to_string(e));
          array_of(und[e], 2, we);
          b.mark_bracket_undefined(i, index_from_json(und[e][0], space.dim(i), we + "/0"), jj,
                                   index_from_json(und[e][1], space.dim(jj), we + "/1"));
        }
      }
    }
  }
  return b.build();
}

// -- rings -------------------------------------------------------------------

Json ring_to_json(const ArtinAlgebra &a) {
  Json out;
  out["name"] = a.name();
  out["m_basis"] = a.labels();
  Json table = Json::array();
  const std::size_t n = a.dim_m();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (const auto &[r, v] : a.sparse_products()[p * n + q])
        table.push_back({p, q, r, to_json(Scalar(v.get_num())), to_json(Scalar(v.get_den()))});
  out["table"] = table;
  return out;
}

ArtinPtr ring_from_json(const Json &j) {
  if (j.is_string())
    return load_ring(j.get<std::string>());
  if (!j.is_object())
    fail("", "expected a ring object");
  std::string name = j.value("name", std::string{});
  if (j.contains("vars")) {
    const Json &vars = j["vars"];
    const Json &rels = field(j, "relations", "");
    if (!vars.is_array() || !rels.is_array())
      fail("/vars", "expected arrays of strings for vars and relations");
    std::vector<std::string> v, r;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (!vars[k].is_string())
        fail("/vars/" + std::to_string(k), "expected a string");
      v.push_back(vars[k].get<std::string>());
    }
    for (std::size_t k = 0; k < rels.size(); ++k) {
      if (!rels[k].is_string())
        fail("/relations/" + std::to_string(k), "expected a string");
      r.push_back(rels[k].get<std::string>());
    }
    try {
      return build_truncated_poly(v, r);
    } catch (const Error &e) {
      fail("/relations", e.what());
    }
  }
  const Json &basis = field(j, "m_basis", "");
  if (!basis.is_array())
    fail("/m_basis", "expected an array of labels");
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (!basis[k].is_string())
      fail("/m_basis/" + std::to_string(k), "expected a string");
    labels.push_back(basis[k].get<std::string>());
  }
  const std::size_t n = labels.size();
  std::vector<Scalar> table(n * n * n);
  const Json &tj = field(j, "table", "");
  if (!tj.is_array())
    fail("/table", "expected an array of [p, q, r, num, den] entries");
  for (std::size_t e = 0; e < tj.size(); ++e) {
    const std::string we = "/table/" + std::to_string(e);
    array_of(tj[e], 5, we);
    const std::size_t p = index_from_json(tj[e][0], n, we + "/0");
    const std::size_t q = index_from_json(tj[e][1], n, we + "/1");
    const std::size_t r = index_from_json(tj[e][2], n, we + "/2");
    const Scalar den = scalar_from_json(tj[e][4], we + "/4");
    if (den == 0)
      fail(we + "/4", "zero denominator");
    table[(p * n + q) * n + r] = scalar_from_json(tj[e][3], we + "/3") / den;
  }
  try {
    return std::make_shared<const ArtinAlgebra>(labels, table, name);
  } catch (const ParseError &) {
    throw;
  } catch (const Error &e) {
    fail("/table", e.what());
  }
}

// -- elements ------------------------------------------------------------------

Json element_to_json(const TensorElement &x) {
  Json out;
  out["degree"] = x.degree;
  out["coeffs"] = coeff_rows(x.coeffs, x.dim_l(), x.dim_m());
  return out;
}

TensorElement element_from_json(const Json &j, const DglaPtr &l, const ArtinPtr &a, std::optional<int> degree) {
  if (j.is_string())
    return element_from_text(j.get<std::string>(), l, a, degree.value_or(1));
  if (j.is_number_integer() && j.get<long long>() == 0)
    return TensorElement::zero(l, a, degree.value_or(1));
  if (!j.is_object())
    fail("", "expected an element object");
  int d = degree.value_or(1);
  if (j.contains("degree")) {
    const int given = int_from_json(j["degree"], "/degree");
    if (degree && given != *degree)
      fail("/degree", fmt::format("expected an element of degree {}, got {}", *degree, given));
    d = given;
  }
  return TensorElement{l, a, d, coeffs_from_rows(field(j, "coeffs", ""), l->dim(d), a->dim_m(), "/coeffs")};
}

std::string element_to_text(const TensorElement &x) {
  std::string out;
  const auto &labels = x.l->labels(x.degree);
  const auto &mono = x.a->labels();
  for (std::size_t k = 0; k < x.dim_l(); ++k)
    for (std::size_t p = 0; p < x.dim_m(); ++p) {
      Scalar c = x.at(k, p);
      if (c == 0)
        continue;
      const bool neg = c < 0;
      if (neg)
        c = -c;
      if (out.empty())
        out = neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      if (c != 1)
        out += to_string(c) + "*";
      out += labels[k] + "@" + mono[p];
    }
  return out.empty() ? "0" : out;
}

TensorElement element_from_text(const std::string &text, const DglaPtr &l, const ArtinPtr &a, int degree) {
  TensorElement x = TensorElement::zero(l, a, degree);
  const std::string s = trim(text);
  if (s == "0")
    return x;
  if (s.empty())
    throw ParseError("element: empty text");
  const auto &labels = l->labels(degree);
  const auto &mono = a->labels();

  // split at '+' / '-' standing alone between spaces, or leading the text
  std::vector<std::pair<bool, std::string>> terms;
  bool neg = false;
  std::size_t start = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    start = 1;
  }
  for (std::size_t i = start; i <= s.size(); ++i) {
    const bool at_end = i == s.size();
    const bool sep = !at_end && (s[i] == '+' || s[i] == '-') && i > 0 && std::isspace(static_cast<unsigned char>(s[i - 1])) &&
                     i + 1 < s.size() && std::isspace(static_cast<unsigned char>(s[i + 1]));
    if (at_end || sep) {
      terms.emplace_back(neg, trim(s.substr(start, i - start)));
      if (sep) {
        neg = s[i] == '-';
        start = i + 1;
      }
    }
  }

  for (const auto &[minus, term] : terms) {
    auto at = term.rfind('@');
    if (at == std::string::npos)
      throw ParseError(fmt::format("element: term '{}' lacks '@monomial'", term));
    const std::string lhs = trim(term.substr(0, at)), m = trim(term.substr(at + 1));
    auto mp = std::find(mono.begin(), mono.end(), m);
    if (mp == mono.end())
      throw ParseError(fmt::format("element: '{}' is not a basis monomial of m_A", m));
    Scalar coef(1);
    std::optional<std::size_t> k;
    if (auto it = std::find(labels.begin(), labels.end(), lhs); it != labels.end())
      k = static_cast<std::size_t>(it - labels.begin());
    for (std::size_t star = lhs.find('*'); !k && star != std::string::npos; star = lhs.find('*', star + 1)) {
      auto it = std::find(labels.begin(), labels.end(), trim(lhs.substr(star + 1)));
      if (it == labels.end())
        continue;
      try {
        coef = parse_scalar(trim(lhs.substr(0, star)));
      } catch (const std::exception &) {
        continue;
      }
      k = static_cast<std::size_t>(it - labels.begin());
    }
    if (!k)
      throw ParseError(fmt::format("element: '{}' is not a basis label of L^{} (optionally prefixed by 'c*')", lhs, degree));
    x.coeffs[*k * a->dim_m() + static_cast<std::size_t>(mp - mono.begin())] += minus ? -coef : coef;
  }
  return x;
}

// -- paths ---------------------------------------------------------------------

Json path_to_json(const PolyPath &p) {
  Json out;
  out["degree"] = p.degree;
  out["cap"] = p.cap;
  Json cs = Json::array();
  const int top = p.t_degree();
  for (int k = 0; k <= top; ++k)
    cs.push_back(coeff_rows(p.coeffs[k], p.l->dim(p.degree), p.a->dim_m()));
  out["coeff_by_t_power"] = cs;
  return out;
}

namespace {

PolyPath path_at(const Json &j, const DglaPtr &l, const ArtinPtr &a, std::optional<int> degree,
                 const std::string &where) {
  if (!j.is_object())
    fail(where, "expected a path object");
  int d = degree.value_or(1);
  if (j.contains("degree")) {
    const int given = int_from_json(j["degree"], where + "/degree");
    if (degree && given != *degree)
      fail(where + "/degree", fmt::format("expected degree {}, got {}", *degree, given));
    d = given;
  }
  const Json &cs = field(j, "coeff_by_t_power", where);
  if (!cs.is_array())
    fail(where + "/coeff_by_t_power", "expected an array of coefficient matrices");
  const int len = static_cast<int>(cs.size());
  int cap = std::max(len - 1, default_path_cap(*a, std::max(len - 1, 1)));
  if (j.contains("cap")) {
    cap = int_from_json(j["cap"], where + "/cap");
    if (cap < len - 1)
      fail(where + "/cap", fmt::format("cap {} is below the path's t-degree {}", cap, len - 1));
  }
  PolyPath p = PolyPath::zero(l, a, d, cap);
  for (int k = 0; k < len; ++k)
    p.coeffs[k] = coeffs_from_rows(cs[k], l->dim(d), a->dim_m(), where + "/coeff_by_t_power/" + std::to_string(k));
  return p;
}

} // namespace

PolyPath path_from_json(const Json &j, const DglaPtr &l, const ArtinPtr &a) { return path_at(j, l, a, {}, ""); }

Json omega_to_json(const OmegaElement &w) {
  Json out;
  out["a"] = path_to_json(w.a);
  out["b"] = path_to_json(w.b);
  return out;
}

OmegaElement omega_from_json(const Json &j, const DglaPtr &l, const ArtinPtr &a) {
  PolyPath pa = path_at(field(j, "a", ""), l, a, {}, "/a");
  PolyPath pb = path_at(field(j, "b", ""), l, a, pa.degree - 1, "/b");
  const int cap = std::max(pa.cap, pb.cap);
  return {pa.with_cap(cap), pb.with_cap(cap)};
}

// -- morphisms and reports ------------------------------------------------------------

Json morphism_to_json(const DglaMorphism &f) {
  Json out;
  out["source"] = dgla_ref(f.source);
  out["target"] = dgla_ref(f.target);
  Json blocks = Json::object();
  for (const auto &[d, m] : f.blocks)
    blocks[std::to_string(d)] = to_json(m);
  out["blocks"] = blocks;
  return out;
}

DglaMorphism morphism_from_json(const Json &j) {
  DglaMorphism f;
  f.source = dgla_from_ref(field(j, "source", ""), "/source");
  f.target = dgla_from_ref(field(j, "target", ""), "/target");
  const Json &bj = field(j, "blocks", "");
  if (!bj.is_object())
    fail("/blocks", "expected an object keyed by degree");
  for (const auto &[key, val] : bj.items()) {
    const int d = degree_key(key, "/blocks");
    f.blocks[d] = matrix_from_json(val, f.target->dim(d), f.source->dim(d), "/blocks/" + key);
  }
  auto rep = validate_morphism(f);
  if (!rep.passed())
    fail("/blocks", fmt::format("not a DGLA morphism: {} fails at ({})", rep.violations.front().identity,
                                fmt::join(rep.violations.front().tuple, ", ")));
  return f;
}

Json cohomology_to_json(const Dgla &l) {
  const auto &h = cohomology(l);
  Json out = Json::object();
  for (int d = l.lo(); d <= l.hi(); ++d) {
    Json e;
    if (!h.has(d)) {
      e["computable"] = false;
      out[std::to_string(d)] = e;
      continue;
    }
    const auto &c = h.at(d);
    e["dim_z"] = c.z.dim();
    e["dim_b"] = c.b.dim();
    e["dim_h"] = c.dim_h();
    Json reps = Json::array();
    for (const auto &v : c.h.vectors())
      reps.push_back(to_json(v));
    e["representatives"] = reps;
    out[std::to_string(d)] = e;
  }
  return out;
}

Json truncated_map_to_json(const TruncatedMap &q) {
  Json out = Json::object();
  for (std::size_t i = 0; i < q.q.size(); ++i) {
    Json poly = Json::object();
    for (const auto &[mono, c] : q.q[i])
      if (c != 0)
        poly[fmt::format("[{}]", fmt::join(mono, ","))] = to_json(c);
    out["q" + std::to_string(i + 1)] = poly;
  }
  return out;
}

// -- sources ---------------------------------------------------------------------

DglaPtr load_dgla(const std::string &source) {
  const std::string s = trim(source);
  const std::string prefix = "builtin:";
  if (s.rfind(prefix, 0) == 0)
    return fixtures::dgla(s.substr(prefix.size()));
  if (auto j = json_source(s))
    return dgla_from_json(*j);
  const auto names = fixtures::dgla_names();
  if (std::find(names.begin(), names.end(), s) != names.end())
    return fixtures::dgla(s);
  throw ParseError(fmt::format("DGLA source '{}' is neither builtin:NAME, JSON nor a readable file", s));
}

ArtinPtr load_ring(const std::string &source) {
  std::string s = trim(source);
  if (s.rfind("builtin:", 0) == 0)
    return fixtures::ring(s.substr(8));
  const auto names = fixtures::ring_names();
  if (std::find(names.begin(), names.end(), s) != names.end())
    return fixtures::ring(s);
  if (auto j = json_source(s))
    return ring_from_json(*j);
  std::vector<std::string> vars, rels;
  std::stringstream ss(s);
  for (std::string r; std::getline(ss, r, ',');) {
    r = trim(r);
    if (r.empty())
      throw ParseError(fmt::format("ring '{}': empty relation", s));
    for (char c : r)
      if (std::isalpha(static_cast<unsigned char>(c)) &&
          std::find(vars.begin(), vars.end(), std::string(1, c)) == vars.end())
        vars.emplace_back(1, c);
    rels.push_back(r);
  }
  try {
    return build_truncated_poly(vars, rels);
  } catch (const Error &e) {
    throw ParseError(fmt::format("ring '{}': {}", s, e.what()));
  }
}

TensorElement load_element(const std::string &source, const DglaPtr &l, const ArtinPtr &a, int degree) {
  if (auto j = json_source(source))
    return element_from_json(*j, l, a, degree);
  return element_from_text(source, l, a, degree);
}

PolyPath load_path(const std::string &source, const DglaPtr &l, const ArtinPtr &a) {
  if (auto j = json_source(source))
    return path_from_json(*j, l, a);
  throw ParseError(fmt::format("path source '{}' is neither JSON nor a readable file", source));
}

OmegaElement load_omega(const std::string &source, const DglaPtr &l, const ArtinPtr &a) {
  if (auto j = json_source(source))
    return omega_from_json(*j, l, a);
  throw ParseError(fmt::format("path source '{}' is neither JSON nor a readable file", source));
}

DglaMorphism load_morphism(const std::string &source) {
  const std::string s = trim(source);
  auto colon = s.find(':');
  if (colon != std::string::npos && !looks_like_json(s)) {
    const std::string kind = s.substr(0, colon), rest = s.substr(colon + 1);
    if (kind == "identity")
      return identity_morphism(load_dgla(rest));
    if (kind == "truncation")
      return truncate_positive(load_dgla(rest));
    if (kind == "zero") {
      auto l = load_dgla(rest);
      return zero_morphism(l, l);
    }
  }
  if (auto j = json_source(s))
    return morphism_from_json(*j);
  throw ParseError(fmt::format("morphism source '{}' is not identity:, truncation:, zero:, JSON or a file", s));
}

std::string digest(const std::string &text) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  for (unsigned int i = 0; i < len; ++i)
    out += fmt::format("{:02x}", md[i]);
  return out;
}

} // namespace dgla::io

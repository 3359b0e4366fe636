// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include "ratmat/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ratmat
{

namespace
{

[[noreturn]] void schema_error(const std::string &what)
{
  throw Error("schema: " + what);
}

const Json &field(const Json &j, const char *key)
{
  if (!j.is_object() || !j.contains(key))
  {
    schema_error(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

std::size_t count_field(const Json &j, const char *key)
{
  const Json &v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
  {
    schema_error(std::string("\"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

int int_field(const Json &j, const char *key, int fallback)
{
  if (!j.contains(key))
  {
    return fallback;
  }
  const Json &v = j.at(key);
  if (!v.is_number_integer())
  {
    schema_error(std::string("\"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

double number(const Json &v, const std::string &what)
{
  if (!v.is_number())
  {
    schema_error(what + " must be a number");
  }
  return v.get<double>();
}

}  // namespace

Json complex_to_json(Complex z)
{
  return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json &j)
{
  if (!j.is_array() || j.size() != 2)
  {
    schema_error("complex value must be [re, im]");
  }
  const Complex z(number(j[0], "re"), number(j[1], "im"));
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
  {
    schema_error("complex value must be finite");
  }
  return z;
}

Json points_to_json(const std::vector<Complex> &points)
{
  Json a = Json::array();
  for (const Complex z : points)
  {
    a.push_back(complex_to_json(z));
  }
  return a;
}

std::vector<Complex> points_from_json(const Json &j)
{
  if (!j.is_array())
  {
    schema_error("point list must be an array of [re, im]");
  }
  std::vector<Complex> out;
  for (const auto &e : j)
  {
    out.push_back(complex_from_json(e));
  }
  return out;
}

Json matrix_to_json(const ComplexMatrix &M)
{
  Json data = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); i++)
  {
    for (Eigen::Index k = 0; k < M.cols(); k++)
    {
      data.push_back(complex_to_json(M(i, k)));
    }
  }
  return Json{{"rows", M.rows()}, {"cols", M.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json &j)
{
  const std::size_t rows = count_field(j, "rows");
  const std::size_t cols = count_field(j, "cols");
  const Json &data = field(j, "data");
  if (!data.is_array() || data.size() != rows * cols)
  {
    schema_error("\"data\" must hold rows * cols entries");
  }
  ComplexMatrix M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; i++)
  {
    for (std::size_t k = 0; k < cols; k++)
    {
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
        complex_from_json(data[i * cols + k]);
    }
  }
  return M;
}

ComplexVector vector_from_json(const Json &j)
{
  const ComplexMatrix M = matrix_from_json(j);
  if (M.cols() != 1)
  {
    schema_error("a vector must have cols = 1");
  }
  return M.col(0);
}

Json pole_spec_to_json(const PoleSpec &spec)
{
  Json poles = Json::array();
  for (const auto &p : spec.poles)
  {
    poles.push_back({{"lambda", complex_to_json(p.lambda)}, {"kappa", p.kappa}, {"chi", p.chi}});
  }
  return Json{{"kappa0", spec.kappa0}, {"chi0", spec.chi0}, {"poles", std::move(poles)}};
}

PoleSpec pole_spec_from_json(const Json &j)
{
  if (!j.is_object())
  {
    schema_error("pole spec must be an object");
  }
  PoleSpec spec;
  spec.kappa0 = int_field(j, "kappa0", 1);
  spec.chi0 = int_field(j, "chi0", 0);
  if (j.contains("poles"))
  {
    const Json &poles = j.at("poles");
    if (!poles.is_array())
    {
      schema_error("\"poles\" must be an array");
    }
    for (const auto &p : poles)
    {
      FinitePole fp;
      fp.lambda = complex_from_json(field(p, "lambda"));
      fp.kappa = int_field(p, "kappa", 1);
      fp.chi = int_field(p, "chi", 0);
      spec.poles.push_back(fp);
    }
  }
  return spec;
}

Json bound_result_to_json(const BoundResult &r)
{
  return Json{{"e1", r.value},
              {"argmax_s", r.argmax_s},
              {"argmax_mu", complex_to_json(r.argmax_mu)},
              {"grid", {{"s", r.n_s}, {"mu", r.n_mu}}}};
}

Json reduced_model_to_json(const ReducedModel &m)
{
  Json spectrum = Json::array();
  for (const auto &p : m.reduced_spectrum)
  {
    spectrum.push_back({{"value", complex_to_json(p.value)}, {"multiplicity", p.multiplicity}});
  }
  Json j{{"V", matrix_to_json(m.V)},
         {"Ahat", matrix_to_json(m.Ahat)},
         {"bhat", matrix_to_json(m.bhat)},
         {"spec", pole_spec_to_json(m.spec)},
         {"side", m.side == Side::One ? "one" : "two"},
         {"reduced_spectrum", std::move(spectrum)}};
  if (m.dhat.size() > 0)
  {
    j["dhat"] = matrix_to_json(m.dhat);
  }
  return j;
}

ExperimentConfig config_from_json(const Json &j)
{
  if (!j.is_object())
  {
    schema_error("config must be an object");
  }
  static const std::set<std::string> known{
    "n",  "trials", "rectangle", "boundary_nodes", "fit_degree",    "mu_samples", "s_samples",
    "t",  "seed",   "output",    "record_timing",  "full_basis"};
  for (const auto &item : j.items())
  {
    if (!known.count(item.key()))
    {
      schema_error("unknown config field \"" + item.key() + "\"");
    }
  }
  ExperimentConfig c;
  if (j.contains("n"))
  {
    c.n = count_field(j, "n");
  }
  if (j.contains("trials"))
  {
    c.trials = count_field(j, "trials");
  }
  if (j.contains("rectangle"))
  {
    const Json &r = j.at("rectangle");
    c.rectangle.re_min = number(field(r, "re_min"), "re_min");
    c.rectangle.re_max = number(field(r, "re_max"), "re_max");
    c.rectangle.im_min = number(field(r, "im_min"), "im_min");
    c.rectangle.im_max = number(field(r, "im_max"), "im_max");
  }
  if (j.contains("boundary_nodes"))
  {
    c.boundary_nodes = count_field(j, "boundary_nodes");
  }
  if (j.contains("fit_degree"))
  {
    const Json &f = j.at("fit_degree");
    if (!f.is_array() || f.size() != 2 || !f[0].is_number_integer() ||
        !f[1].is_number_integer() || f[0].get<long long>() < 0 || f[1].get<long long>() < 0)
    {
      schema_error("\"fit_degree\" must be [L, M] with nonnegative integers");
    }
    c.fit_L = f[0].get<std::size_t>();
    c.fit_M = f[1].get<std::size_t>();
  }
  if (j.contains("mu_samples"))
  {
    c.mu_samples = count_field(j, "mu_samples");
  }
  if (j.contains("s_samples"))
  {
    c.s_samples = count_field(j, "s_samples");
  }
  if (j.contains("t"))
  {
    c.t = number(j.at("t"), "t");
  }
  if (j.contains("seed"))
  {
    const Json &s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
    {
      schema_error("\"seed\" must be a nonnegative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  if (j.contains("output"))
  {
    if (!j.at("output").is_string())
    {
      schema_error("\"output\" must be a string");
    }
    c.output = j.at("output").get<std::string>();
  }
  for (const char *flag : {"record_timing", "full_basis"})
  {
    if (j.contains(flag))
    {
      if (!j.at(flag).is_boolean())
      {
        schema_error(std::string("\"") + flag + "\" must be a boolean");
      }
      (std::string(flag) == "record_timing" ? c.record_timing : c.full_basis) =
        j.at(flag).get<bool>();
    }
  }
  return c;
}

Json config_to_json(const ExperimentConfig &c)
{
  return Json{{"n", c.n},
              {"trials", c.trials},
              {"rectangle",
               {{"re_min", c.rectangle.re_min},
                {"re_max", c.rectangle.re_max},
                {"im_min", c.rectangle.im_min},
                {"im_max", c.rectangle.im_max}}},
              {"boundary_nodes", c.boundary_nodes},
              {"fit_degree", {c.fit_L, c.fit_M}},
              {"mu_samples", c.mu_samples},
              {"s_samples", c.s_samples},
              {"t", c.t},
              {"seed", c.seed},
              {"output", c.output},
              {"record_timing", c.record_timing},
              {"full_basis", c.full_basis}};
}

Json read_json_file(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error("cannot open " + path.string());
  }
  try
  {
    return Json::parse(in);
  }
  catch (const Json::parse_error &e)
  {
    throw Error("schema: " + path.string() + " is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path &path, const std::string &text)
{
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
    {
      throw Error("cannot write " + tmp.string());
    }
    out << text;
    out.flush();
    if (!out)
    {
      throw Error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
  {
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace ratmat

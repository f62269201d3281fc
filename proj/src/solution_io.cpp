// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/solution_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "spiralnls/errors.hpp"
#include "spiralnls/text.hpp"

namespace spiralnls
{

namespace
{

constexpr const char *kMagic = "spiralnls-solution";

std::vector<std::string_view> split(std::string_view line, char sep)
{
  std::vector<std::string_view> out;
  while (true)
  {
    const auto pos = line.find(sep);
    out.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos)
    {
      return out;
    }
    line = line.substr(pos + 1);
  }
}

[[noreturn]] void bad(int line_no, const std::string &msg)
{
  fail(ErrorCode::kIo, "solution file line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

std::string solution_to_csv(const StoredSolution &s)
{
  const PolarGrid &g = s.field.grid();
  std::string out;
  out += "# " + std::string(kMagic) + ",int,1\n";
  out += "# p,real," + format_real(s.params.p) + "\n";
  out += "# q,real," + format_real(s.params.q) + "\n";
  out += "# lambda,real," + format_real(s.params.lambda) + "\n";
  out += "# radius,real," + format_real(g.radius()) + "\n";
  out += "# nr,int," + std::to_string(g.nr()) + "\n";
  out += "# ntheta,int," + std::to_string(g.ntheta()) + "\n";
  out += "# sector,string," + g.sector().name() + "\n";
  out += "# kind,string," + s.kind + "\n";
  out += "# grad_tol,real," + format_real(s.grad_tol) + "\n";
  out += "# seed,string," + s.seed + "\n";
  out += "j,k,r,theta,u\n";
  for (int j = 0; j < g.nr(); ++j)
  {
    const std::string rs = format_real(g.radii()[j]);
    for (int k = 0; k < g.ntheta(); ++k)
    {
      out += std::to_string(j) + "," + std::to_string(k) + "," + rs + "," +
             format_real(g.angles()[k]) + "," + format_real(s.field.at(j, k)) + "\n";
    }
  }
  return out;
}

StoredSolution solution_from_csv(const std::string &text)
{
  std::map<std::string, std::string, std::less<>> header;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool saw_columns = false;
  while (std::getline(in, line))
  {
    ++line_no;
    if (line.starts_with("# "))
    {
      const auto parts = split(std::string_view(line).substr(2), ',');
      if (parts.size() != 3)
      {
        bad(line_no, "header line must read '# key,type,value'");
      }
      const std::string_view type = parts[1];
      if (type != "int" && type != "real" && type != "string")
      {
        bad(line_no, "unknown header type '" + std::string(type) + "'");
      }
      header[std::string(parts[0])] = std::string(parts[2]);
      continue;
    }
    if (line != "j,k,r,theta,u")
    {
      bad(line_no, "expected the column line 'j,k,r,theta,u'");
    }
    saw_columns = true;
    break;
  }
  if (!saw_columns || !header.contains(kMagic))
  {
    fail(ErrorCode::kIo, "not a solution file (missing header or column line)");
  }
  const auto need = [&](const char *key) -> const std::string &
  {
    const auto it = header.find(key);
    if (it == header.end())
    {
      fail(ErrorCode::kIo, std::string("solution header lacks '") + key + "'");
    }
    return it->second;
  };
  ModelParams params;
  GridPtr grid;
  std::string kind;
  StoredSolution out{Field(build_grid(1.0, 2, 4, Sector::full_disk())), {}, "ground", 1e-8, ""};
  try
  {
    params = ModelParams{parse_real(need("p"), "p"), parse_real(need("q"), "q"),
                         parse_real(need("lambda"), "lambda")};
    grid = build_grid(parse_real(need("radius"), "radius"),
                      static_cast<int>(parse_int(need("nr"), "nr")),
                      static_cast<int>(parse_int(need("ntheta"), "ntheta")),
                      Sector::parse(need("sector")));
    out.grad_tol = parse_real(need("grad_tol"), "grad_tol");
  }
  catch (const Error &e)
  {
    if (e.code() == ErrorCode::kIo)
    {
      throw;
    }
    fail(ErrorCode::kIo, std::string("bad solution header: ") + e.message());
  }
  out.kind = need("kind");
  if (out.kind != "ground" && out.kind != "nodal")
  {
    fail(ErrorCode::kIo, "solution kind must be ground or nodal");
  }
  out.seed = header.contains("seed") ? header.find("seed")->second : "";
  out.params = params;

  std::vector<double> values(grid->size());
  std::size_t count = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    if (line.empty())
    {
      continue;
    }
    const auto cols = split(line, ',');
    if (cols.size() != 5)
    {
      bad(line_no, "expected 5 columns");
    }
    try
    {
      const long long j = parse_int(cols[0], "j");
      const long long k = parse_int(cols[1], "k");
      if (j < 0 || j >= grid->nr() || k < 0 || k >= grid->ntheta() ||
          static_cast<std::size_t>(j * grid->ntheta() + k) != count)
      {
        bad(line_no, "row index out of order");
      }
      const double r = parse_real(cols[2], "r");
      const double th = parse_real(cols[3], "theta");
      if (r != grid->radii()[j] || th != grid->angles()[k])
      {
        bad(line_no, "node coordinates do not match the header grid");
      }
      values[count++] = parse_real(cols[4], "u");
    }
    catch (const Error &e)
    {
      if (e.code() == ErrorCode::kIo)
      {
        throw;
      }
      bad(line_no, e.message());
    }
  }
  if (count != grid->size())
  {
    fail(ErrorCode::kIo, "solution file has " + std::to_string(count) + " rows, expected " +
                             std::to_string(grid->size()));
  }
  out.field = Field(grid, std::move(values));
  return out;
}

std::string read_text_file(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    fail(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string &path, const std::string &content)
{
  const std::filesystem::path fp(path);
  if (fp.has_parent_path())
  {
    std::error_code ec;
    std::filesystem::create_directories(fp.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    fail(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  }
  out << content;
  out.flush();
  if (!out)
  {
    fail(ErrorCode::kIo, "write to '" + path + "' failed");
  }
}

void save_solution(const std::string &path, const StoredSolution &s)
{
  write_text_file(path, solution_to_csv(s));
}

StoredSolution load_solution(const std::string &path)
{
  try
  {
    return solution_from_csv(read_text_file(path));
  }
  catch (const Error &e)
  {
    fail(e.code(), path + ": " + e.message());
  }
}

}  // namespace spiralnls

#include "hmt/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace hmt::io {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  // write to a temp file then rename: outputs appear atomically
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << content;
  }
  std::filesystem::rename(tmp, path);
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_full(row[i]);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

void save_grid(const GridFunction& f, const std::filesystem::path& base,
               GridFormat format) {
  nlohmann::json header;
  header["dim"] = f.dim();
  header["box_side"] = f.box_side();
  header["samples_per_dim"] = f.samples_per_dim();
  auto data_path = base;
  if (format == GridFormat::Binary) {
    data_path += ".bin";
    header["format"] = "binary";
    std::ofstream os(data_path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + data_path.string());
    os.write(reinterpret_cast<const char*>(f.data().data()),
             static_cast<std::streamsize>(f.size() * sizeof(cplx)));
  } else {
    data_path += ".csv";
    header["format"] = "csv";
    std::string out = "re,im\n";
    for (const cplx& v : f.data())
      out += format_full(v.real()) + "," + format_full(v.imag()) + "\n";
    write_text_file(data_path, out);
  }
  header["data"] = data_path.filename().string();
  auto hpath = base;
  hpath += ".json";
  write_text_file(hpath, header.dump(2) + "\n");
}

GridFunction load_grid(const std::filesystem::path& header_json) {
  std::ifstream is(header_json);
  if (!is) throw std::runtime_error("cannot open " + header_json.string());
  nlohmann::json header = nlohmann::json::parse(is);
  GridFunction f(header.at("dim").get<int>(), header.at("box_side").get<double>(),
                 header.at("samples_per_dim").get<int>());
  auto data_path = header_json.parent_path() / header.at("data").get<std::string>();
  std::string format = header.value("format", "binary");
  if (format == "binary") {
    std::ifstream ds(data_path, std::ios::binary);
    if (!ds) throw std::runtime_error("cannot open " + data_path.string());
    ds.read(reinterpret_cast<char*>(f.data().data()),
            static_cast<std::streamsize>(f.size() * sizeof(cplx)));
    if (ds.gcount() != static_cast<std::streamsize>(f.size() * sizeof(cplx)))
      throw std::runtime_error("grid data file truncated: " + data_path.string());
  } else if (format == "csv") {
    std::ifstream ds(data_path);
    if (!ds) throw std::runtime_error("cannot open " + data_path.string());
    std::string line;
    std::getline(ds, line); // header
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!std::getline(ds, line))
        throw std::runtime_error("grid csv truncated: " + data_path.string());
      double re = 0, im = 0;
      if (std::sscanf(line.c_str(), "%lf,%lf", &re, &im) != 2)
        throw std::runtime_error("bad grid csv row: " + line);
      f[i] = cplx(re, im);
    }
  } else {
    throw std::runtime_error("unknown grid format: " + format);
  }
  return f;
}

} // namespace hmt::io

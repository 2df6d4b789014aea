#include "multiproj/tensor_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace multiproj {

static_assert(std::endian::native == std::endian::little,
              "MLPT I/O assumes a little-endian host");

TensorFormat format_for_path(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
    return TensorFormat::Csv;
  return TensorFormat::Mlpt;
}

DenseTensor read_mlpt(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "MLPT", 4) != 0)
    throw IoError("'" + path + "' is not an MLPT tensor file (bad magic)");
  std::uint32_t order = 0;
  if (!in.read(reinterpret_cast<char*>(&order), sizeof order) || order == 0)
    throw IoError("'" + path + "': malformed MLPT header");
  std::vector<std::size_t> shape(order);
  std::size_t total = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    std::uint64_t dim = 0;
    if (!in.read(reinterpret_cast<char*>(&dim), sizeof dim) || dim == 0)
      throw IoError("'" + path + "': malformed MLPT dimension");
    shape[i] = static_cast<std::size_t>(dim);
    total *= shape[i];
  }
  std::vector<double> data(total);
  if (!in.read(reinterpret_cast<char*>(data.data()),
               static_cast<std::streamsize>(total * sizeof(double))))
    throw IoError("'" + path + "': truncated MLPT payload");
  try {
    return DenseTensor(std::move(shape), std::move(data));
  } catch (const ValueError& e) {
    throw IoError("'" + path + "': " + e.what());
  }
}

void write_mlpt(const DenseTensor& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write("MLPT", 4);
  std::uint32_t order = static_cast<std::uint32_t>(t.order());
  out.write(reinterpret_cast<const char*>(&order), sizeof order);
  for (std::size_t d : t.shape()) {
    std::uint64_t dim = d;
    out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  }
  out.write(reinterpret_cast<const char*>(t.data().data()),
            static_cast<std::streamsize>(t.size() * sizeof(double)));
  if (!out) throw IoError("write failed for '" + path + "'");
}

DenseTensor read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<double> data;
  std::size_t rows = 0, cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::size_t this_cols = 0;
    while (std::getline(ls, cell, ',')) {
      try {
        data.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError("'" + path + "': bad CSV value '" + cell + "'");
      }
      ++this_cols;
    }
    if (rows == 0)
      cols = this_cols;
    else if (this_cols != cols)
      throw IoError("'" + path + "': ragged CSV rows");
    ++rows;
  }
  if (rows == 0) throw IoError("'" + path + "': empty CSV");
  try {
    return DenseTensor::matrix(rows, cols, std::move(data));
  } catch (const ValueError& e) {
    throw IoError("'" + path + "': " + e.what());
  }
}

void write_csv_matrix(const DenseTensor& t, const std::string& path) {
  if (t.order() != 2) throw ShapeError("CSV output requires an order-2 tensor");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.precision(17);
  const std::size_t rows = t.shape()[0];
  const std::size_t cols = t.shape()[1];
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (j > 0) out << ',';
      out << t.data()[i * cols + j];
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

DenseTensor read_tensor(const std::string& path) {
  return format_for_path(path) == TensorFormat::Csv ? read_csv_matrix(path)
                                                    : read_mlpt(path);
}

void write_tensor(const DenseTensor& t, const std::string& path) {
  if (format_for_path(path) == TensorFormat::Csv)
    write_csv_matrix(t, path);
  else
    write_mlpt(t, path);
}

}  // namespace multiproj

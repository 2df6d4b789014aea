#ifndef MULTIPROJ_TENSOR_IO_HPP
#define MULTIPROJ_TENSOR_IO_HPP

#include <string>

#include "multiproj/tensor.hpp"

namespace multiproj {

enum class TensorFormat { Mlpt, Csv };

/// Format by file extension: ".csv" is CSV, anything else MLPT.
TensorFormat format_for_path(const std::string& path);

/// MLPT: magic "MLPT", u32 order r, r u64 little-endian dims, then
/// product(dims) f64 little-endian values row-major.
DenseTensor read_mlpt(const std::string& path);
void write_mlpt(const DenseTensor& t, const std::string& path);

/// CSV, order-2 only: one matrix row per line.
DenseTensor read_csv_matrix(const std::string& path);
void write_csv_matrix(const DenseTensor& t, const std::string& path);

DenseTensor read_tensor(const std::string& path);
void write_tensor(const DenseTensor& t, const std::string& path);

}  // namespace multiproj

#endif

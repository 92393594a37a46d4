#include "hedonic/embedding.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hedonic/color.hpp"
#include "hedonic/common.hpp"
#include "hedonic/csv.hpp"

namespace hedonic {

std::vector<EmbeddingRecord> load_embeddings(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::vector<EmbeddingRecord> records;
  Eigen::Index dim = -1;

  while (reader.next(fields)) {
    if (records.empty() && dim < 0 && fields.size() == 1 && fields[0].rfind("dim=", 0) == 0) {
      double d = 0;
      if (!parse_double(fields[0].substr(4), d) || d < 1) {
        throw FormatError("embeddings: bad dimension header \"" + fields[0] + "\"");
      }
      dim = static_cast<Eigen::Index>(d);
      continue;
    }
    if (fields.size() < 2) {
      throw FormatError("embeddings line " + std::to_string(reader.line_number()) +
                        ": expected image_id plus vector");
    }
    EmbeddingRecord rec;
    rec.image_id = fields[0];
    const Eigen::Index d = static_cast<Eigen::Index>(fields.size()) - 1;
    if (dim < 0) dim = d;
    if (d != dim) {
      throw FormatError("embeddings line " + std::to_string(reader.line_number()) +
                        ": dimension " + std::to_string(d) + " differs from " + std::to_string(dim));
    }
    rec.vector.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      double v = 0;
      if (!parse_double(fields[i + 1], v) || !std::isfinite(v)) {
        throw FormatError("embeddings line " + std::to_string(reader.line_number()) +
                          ": non-finite component " + std::to_string(i + 1));
      }
      rec.vector(i) = v;
    }
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw FormatError("embeddings file holds no records");
  return records;
}

std::vector<EmbeddingRecord> load_embeddings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open embeddings file " + path);
  return load_embeddings(in);
}

void write_embeddings(std::ostream& out, std::span<const EmbeddingRecord> records) {
  if (!records.empty()) out << "dim=" << records.front().vector.size() << "\n";
  for (const auto& rec : records) {
    out << csv_field(rec.image_id);
    for (Eigen::Index i = 0; i < rec.vector.size(); ++i) out << ',' << format_double(rec.vector(i));
    out << "\n";
  }
}

Eigen::VectorXd toy_embed(const RgbImage& img) {
  if (img.height() < 1 || img.width() < 1) throw DomainError("toy_embed: empty image");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(kToyEmbedDim);

  const GrayImage gray = to_grayscale(img);
  const Eigen::Index h = gray.rows();
  const Eigen::Index w = gray.cols();
  for (int i = 0; i < 8; ++i) {
    const Eigen::Index r0 = i * h / 8;
    const Eigen::Index r1 = (i + 1) * h / 8;
    for (int j = 0; j < 8; ++j) {
      const Eigen::Index c0 = j * w / 8;
      const Eigen::Index c1 = (j + 1) * w / 8;
      double mean = 0;
      if (r1 > r0 && c1 > c0) {
        mean = gray.block(r0, c0, r1 - r0, c1 - c0).cast<double>().mean() / 255.0;
      }
      v(i * 8 + j) = mean;
    }
  }

  const double total = static_cast<double>(h) * static_cast<double>(w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      const Hsv px = rgb_to_hsv(img.r(y, x), img.g(y, x), img.b(y, x));
      int bin = static_cast<int>(px.h / 360.0 * 32.0);
      if (bin > 31) bin = 31;
      v(64 + bin) += 1.0 / total;
    }
  }
  return v;
}

EmbeddingLookup index_embeddings(std::span<const EmbeddingRecord> records) {
  EmbeddingLookup lookup;
  for (const auto& rec : records) lookup[rec.image_id] = rec.vector;
  return lookup;
}

}  // namespace hedonic

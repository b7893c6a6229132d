#pragma once

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace volkov {

// Carried by every dataset: a comment line in CSVs, a "meta" block in JSON.
struct OutputMeta {
    std::string scenario_hash;
    nlohmann::json derived;
};

// "%.9g" cells, '.' radix, one comment line then the header row.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns, const OutputMeta& meta);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void close();
    std::size_t rows() const { return rows_; }

private:
    std::FILE* f_ = nullptr;
    std::string path_;
    std::size_t columns_ = 0;
    std::size_t rows_ = 0;
};

std::string format_number(double v);

void write_json(const std::string& path, nlohmann::json body, const OutputMeta& meta);

// Creates the directory tree; IoError on failure.
void ensure_directory(const std::string& dir);
std::string join_path(const std::string& dir, const std::string& file);

} // namespace volkov

#include "volkov/output.hpp"
#include "volkov/errors.hpp"

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace volkov {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns, const OutputMeta& meta)
    : path_(path), columns_(columns.size()) {
    f_ = std::fopen(path.c_str(), "w");
    if (!f_) throw IoError("cannot open " + path + ": " + std::strerror(errno));
    std::string head = "# scenario_hash=" + meta.scenario_hash + " derived=" + meta.derived.dump() + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) head += (i ? "," : "") + columns[i];
    head += "\n";
    std::fputs(head.c_str(), f_);
}

CsvWriter::~CsvWriter() {
    if (f_) std::fclose(f_);
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw IoError(path_ + ": row width does not match the header");
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ',';
        line += format_number(values[i]);
    }
    line += '\n';
    if (std::fputs(line.c_str(), f_) < 0) throw IoError("write failed for " + path_);
    ++rows_;
}

void CsvWriter::close() {
    if (f_ && std::fclose(f_) != 0) {
        f_ = nullptr;
        throw IoError("close failed for " + path_);
    }
    f_ = nullptr;
}

void write_json(const std::string& path, nlohmann::json body, const OutputMeta& meta) {
    body["meta"] = {{"scenario_hash", meta.scenario_hash}, {"derived", meta.derived}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path);
    out << body.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path);
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

} // namespace volkov

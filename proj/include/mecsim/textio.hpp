#ifndef MECSIM_TEXTIO_HPP
#define MECSIM_TEXTIO_HPP

#include <string>
#include <vector>

namespace mecsim {

// Shortest round-trip decimal form of a double ("0.1", "3.5e7", "nan").
// Locale-independent and platform-stable, so emitted files are
// byte-comparable across runs and machines.
std::string format_double(double v);

// Minimal CSV assembly: fields joined by commas, rows by '\n'.  Fields
// containing a comma, quote, or newline are quoted with doubled quotes.
std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

// Writes text to `path` atomically enough for our purposes (truncate +
// write); throws std::runtime_error when the file cannot be opened.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mecsim

#endif  // MECSIM_TEXTIO_HPP

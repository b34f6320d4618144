// Textual format for the three machine kinds.  One kind-headed document
// format: the first keyword (system / tm / cm) selects the parser.  Printing
// is deterministic and parse(print(x)) reproduces x structurally.
#pragma once

#include <stdexcept>
#include <string>

#include "snpsim/counter_machine.hpp"
#include "snpsim/snp_system.hpp"
#include "snpsim/turing.hpp"

namespace snpsim {

class dsl_error : public std::runtime_error {
 public:
  dsl_error(int line, int col, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + message),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

enum class doc_kind { snp, tm, cm };

// Peeks at the first keyword of a document.
doc_kind doc_kind_of(const std::string& text);

snp_system parse_snp(const std::string& text);
std::string print_snp(const snp_system& sys);

tm_spec parse_tm(const std::string& text);
std::string print_tm(const tm_spec& spec);

cm_spec parse_cm(const std::string& text);
std::string print_cm(const cm_spec& spec);

}  // namespace snpsim

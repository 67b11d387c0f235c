#pragma once

#include <string>

#include "pin2homalg/ainf.hpp"
#include "pin2homalg/resolve.hpp"
#include "pin2homalg/rmodule.hpp"
#include "pin2homalg/ssq.hpp"

namespace pin2 {

std::string module_to_json(const GradedModule& m);
GradedModule module_from_json(const std::string& text);

std::string algebra_to_json(const AInfAlgebra& a);
AInfAlgebra algebra_from_json(const std::string& text);

/* module JSON embeds its algebra under "algebra" */
std::string ainf_module_to_json(const AInfModule& m);
AInfModule ainf_module_from_json(const std::string& text);

std::string table_to_json(const BigradedTable& t);
BigradedTable table_from_json(const std::string& text);

DifferentialPattern pattern_from_json(const std::string& text);
std::string pattern_to_json(const DifferentialPattern& p);

std::string check_report_to_json(const CheckReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace pin2

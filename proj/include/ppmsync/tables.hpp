#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ppmsync {

/// One perfect regular cyclotomic marker, every value measured from its sets.
struct Table1Row {
    std::uint32_t m = 0;
    /// "quartic" (order 16m^2+1) or "sextic" (order 108m^2+1).
    std::string family;
    std::uint32_t n = 0;
    std::uint64_t d0 = 0;
    std::uint64_t d1 = 0;
    std::uint64_t rho = 0;
    std::uint64_t redundancy = 0;
    std::int64_t rate_num = 0;
    std::int64_t rate_den = 0;
    bool perfect = false;
    bool regular = false;
};

/// Rows for the quartic family m in {1,4,5,6,9,10} and the sextic family m in {1,2,6}.
std::vector<Table1Row> regenerate_table1();

/// Catalog rows with the minimum distance measured over the first M words.
struct Table3Row {
    std::string scheme;
    std::uint32_t m = 0;
    std::uint32_t q = 0;
    std::uint32_t k = 0;
    std::uint32_t d = 0;
};

std::vector<Table3Row> regenerate_table3();

std::string table1_csv(const std::vector<Table1Row>& rows);
std::string table3_csv(const std::vector<Table3Row>& rows);

/// Published values, as CSV in the same layout.
const std::string& golden_table1_csv();
const std::string& golden_table3_csv();

/// Line-by-line comparison; each mismatch names the data row (1-based) and
/// both lines. Empty when the tables agree.
std::vector<std::string> compare_tables(const std::string& produced, const std::string& golden);

} // namespace ppmsync

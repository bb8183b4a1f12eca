#include "ppmsync/tables.hpp"

#include <algorithm>
#include <sstream>

#include "ppmsync/catalog.hpp"
#include "ppmsync/dss.hpp"

namespace ppmsync {

namespace {

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

Table1Row measure(std::uint32_t m, const char* family, const Dss& dss)
{
    const auto r = verify(dss);
    return {m,
            family,
            dss.n(),
            dss.d0().size(),
            dss.d1().size(),
            r.index,
            r.redundancy,
            r.redundancy_rate.num(),
            r.redundancy_rate.den(),
            r.perfect,
            r.regular};
}

} // namespace

std::vector<Table1Row> regenerate_table1()
{
    std::vector<Table1Row> rows;
    for (std::uint32_t m : {1U, 4U, 5U, 6U, 9U, 10U}) rows.push_back(measure(m, "quartic", construct_quartic_family(m)));
    for (std::uint32_t m : {1U, 2U, 6U}) rows.push_back(measure(m, "sextic", construct_sextic_family(m)));
    return rows;
}

std::vector<Table3Row> regenerate_table3()
{
    std::vector<Table3Row> rows;
    for (const auto& e : catalog()) {
        rows.push_back({std::string(scheme_name(e.scheme)), e.m, e.q, e.k, e.measured_distance()});
    }
    return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows)
{
    std::ostringstream out;
    out << "n,d0,d1,rho,redundancy,rate_num,rate_den,perfect,regular\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.d0 << ',' << r.d1 << ',' << r.rho << ',' << r.redundancy << ',' << r.rate_num << ','
            << r.rate_den << ',' << (r.perfect ? "true" : "false") << ',' << (r.regular ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string table3_csv(const std::vector<Table3Row>& rows)
{
    std::ostringstream out;
    out << "scheme,M,Q,K,d\n";
    for (const auto& r : rows) out << r.scheme << ',' << r.m << ',' << r.q << ',' << r.k << ',' << r.d << '\n';
    return out.str();
}

const std::string& golden_table1_csv()
{
    static const std::string text = "n,d0,d1,rho,redundancy,rate_num,rate_den,perfect,regular\n"
                                     "17,4,4,2,8,8,17,true,true\n"
                                     "257,64,64,32,128,128,257,true,true\n"
                                     "401,100,100,50,200,200,401,true,true\n"
                                     "577,144,144,72,288,288,577,true,true\n"
                                     "1297,324,324,162,648,648,1297,true,true\n"
                                     "1601,400,400,200,800,800,1601,true,true\n"
                                     "109,18,18,6,36,36,109,true,true\n"
                                     "433,72,72,24,144,144,433,true,true\n"
                                     "3889,648,648,216,1296,1296,3889,true,true\n";
    return text;
}

const std::string& golden_table3_csv()
{
    static const std::string text = "scheme,M,Q,K,d\n"
                                     "PPM,8,8,1,2\n"
                                     "GEPPM,8,8,3,4\n"
                                     "EPPM,8,11,5,6\n"
                                     "PPM,16,16,1,2\n"
                                     "AEPPM,16,11,5,5\n"
                                     "GEPPM,16,16,4,6\n"
                                     "GEPPM,16,16,8,8\n"
                                     "EPPM,16,19,9,10\n"
                                     "PPM,32,32,1,2\n"
                                     "MPPM,32,7,3,2\n"
                                     "GEPPM,32,16,3,4\n"
                                     "GEPPM,32,37,10,14\n"
                                     "EPPM,32,35,17,18\n";
    return text;
}

std::vector<std::string> compare_tables(const std::string& produced, const std::string& golden)
{
    const auto got = lines_of(produced);
    const auto want = lines_of(golden);
    std::vector<std::string> problems;
    if (got.empty() || want.empty() || got.front() != want.front()) {
        problems.push_back("header: expected '" + (want.empty() ? "" : want.front()) + "', got '" +
                           (got.empty() ? "" : got.front()) + "'");
        return problems;
    }
    const auto rows = std::max(got.size(), want.size());
    for (std::size_t i = 1; i < rows; ++i) {
        const auto g = i < got.size() ? got[i] : std::string("<missing>");
        const auto w = i < want.size() ? want[i] : std::string("<missing>");
        if (g != w) problems.push_back("row " + std::to_string(i) + ": expected '" + w + "', got '" + g + "'");
    }
    return problems;
}

} // namespace ppmsync

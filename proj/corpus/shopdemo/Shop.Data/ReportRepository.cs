using System;
using System.Collections.Generic;
using Shop.Data.Entities;

namespace Shop.Data
{
    public class ReportRepository
    {
        public List<ReportRow> LoadRows(DateTime day)
        {
            var rows = new List<ReportRow>();
            rows.Add(new ReportRow("orders", 0));
            return rows;
        }
    }
}

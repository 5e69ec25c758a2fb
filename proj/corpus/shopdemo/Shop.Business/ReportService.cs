using System;
using System.Collections.Generic;
using Shop.Data;
using Shop.Data.Entities;

namespace Shop.Business
{
    public class ReportService
    {
        private ReportRepository source = new ReportRepository();

        public List<ReportRow> BuildDaily(DateTime day)
        {
            List<ReportRow> rows = source.LoadRows(day);
            rows.Add(ReportRow.Summary(rows));
            return rows;
        }
    }
}

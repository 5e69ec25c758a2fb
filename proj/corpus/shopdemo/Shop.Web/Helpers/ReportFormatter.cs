using System;
using System.Collections.Generic;
using System.Text;
using Shop.Data.Entities;

namespace Shop.Web.Helpers
{
    public static class ReportFormatter
    {
        public static string Title(DateTime day)
        {
            return "Daily report " + day.ToString("yyyy-MM-dd");
        }

        public static string ToHtml(List<ReportRow> rows)
        {
            rows.RemoveAll(row => row.Amount == 0);
            var html = new StringBuilder();
            foreach (ReportRow row in rows)
            {
                html.Append(row.Label);
            }
            return html.ToString();
        }
    }
}

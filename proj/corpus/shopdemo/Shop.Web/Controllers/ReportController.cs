using System;
using System.Collections.Generic;
using Shop.Business;
using Shop.Data.Entities;
using Shop.Web.Helpers;

namespace Shop.Web.Controllers
{
    public class ReportController : Controller
    {
        private ReportService reports = new ReportService();

        public string ShowDailyReport(DateTime day)
        {
            List<ReportRow> rows = reports.BuildDaily(day);
            string title = ReportFormatter.Title(day);
            return title + ReportFormatter.ToHtml(rows);
        }
    }
}

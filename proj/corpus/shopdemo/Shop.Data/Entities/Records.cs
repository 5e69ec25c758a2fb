using System.Collections.Generic;

namespace Shop.Data.Entities
{
    public class Customer
    {
        public int Id;
        public string Name;
        public string Email;

        public Customer(string name, string email)
        {
            Name = name;
            Email = email;
        }
    }

    public class Cart
    {
        public int CustomerId;
        public string Sku;
        public int Quantity;
    }

    public class OrderSummary
    {
        public int OrderId;
        public decimal Total;

        public OrderSummary(int orderId, decimal total)
        {
            OrderId = orderId;
            Total = total;
        }
    }

    public class ReportRow
    {
        public string Label;
        public decimal Amount;

        public ReportRow(string label, decimal amount)
        {
            Label = label;
            Amount = amount;
        }

        public static ReportRow Summary(List<ReportRow> rows)
        {
            decimal sum = 0m;
            foreach (ReportRow row in rows)
            {
                sum += row.Amount;
            }
            return new ReportRow("total", sum);
        }
    }
}

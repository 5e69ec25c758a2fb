using System.Net.Mail;

namespace Shop.Business.Messaging
{
    public class Message
    {
        private SmtpClient client = new SmtpClient("localhost");
        public string To;
        public string Body;

        public Message(string to, string body)
        {
            To = to;
            Body = body;
        }

        public void Send()
        {
            client.Send("shop@example.com", To, "Shop", Body);
        }
    }

    public static class MessageFactory
    {
        public static Message Create(string template, string to)
        {
            return new Message(to, "template:" + template);
        }
    }
}
